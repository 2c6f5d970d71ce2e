"""Sparse homogeneous forms over GF(p) and the generic characteristic polynomial.

A :class:`MultiForm` maps exponent vectors to nonzero residues; every stored
exponent vector sums to the form's degree.  The coefficients c1..c5 of
det(t*I - M(x)) for the generic element x0 + x1*z + ... + x4*z^4 are built
here by exact, division-free determinant expansion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .ff import FFElement, FieldCtx


class DimensionMismatch(ValueError):
    pass


class MultiForm:
    """Homogeneous form of fixed degree in ``nvars`` variables over GF(p)."""

    __slots__ = ("p", "nvars", "degree", "terms")

    def __init__(self, p: int, nvars: int, degree: int, terms=None):
        self.p = p
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for exp, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DimensionMismatch(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if min(exp) < 0 or sum(exp) != degree:
                raise ValueError(f"exponent {exp} is not of degree {degree}")
            c = (clean.get(exp, 0) + int(c)) % p
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, nvars, degree):
        return cls(p, nvars, degree)

    @classmethod
    def variable(cls, p, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls(p, nvars, 1, {tuple(exp): 1})

    @classmethod
    def constant(cls, p, nvars, c):
        return cls(p, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def linear(cls, p, coeffs: Sequence[int]):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(p, n, 1, terms)

    # -- arithmetic --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """Terms in graded-lex order (x0 > x1 > ...; all terms share one degree)."""
        return sorted(self.terms.items(), reverse=True)

    def _check(self, other):
        if not isinstance(other, MultiForm):
            return NotImplemented
        if other.p != self.p or other.nvars != self.nvars:
            raise DimensionMismatch("forms live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiForm(self.p, self.nvars, self.degree, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> MultiForm:
        return MultiForm(self.p, self.nvars, self.degree,
                         {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiForm(self.p, self.nvars, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiForm.constant(self.p, self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiForm):
            return NotImplemented
        return (self.p, self.nvars, self.degree, self.terms) == \
            (other.p, other.nvars, other.degree, other.terms)

    __hash__ = None

    def __call__(self, point):
        return form_eval(self, point)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "degree": self.degree,
            "terms": [{"exp": list(e), "coef": c} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict, p: int) -> MultiForm:
        return cls(p, obj["nvars"], obj["degree"],
                   [(t["exp"], t["coef"]) for t in obj["terms"]])

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiForm({self.to_text()!r}, p={self.p}, nvars={self.nvars}, degree={self.degree})"


_FACTOR = re.compile(r"^(?:(\d+)|x(\d+)(?:(?:\^|\*\*)(\d+))?)$")


def parse_form(text: str, p: int, nvars: int) -> MultiForm:
    """Parse inline text such as ``"x0^3 + 2*x1*x2^2 - x3^3"``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty form")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in pieces) != s:
        raise ValueError(f"cannot parse form {text!r}")
    terms = []
    degree = None
    for sign, body in pieces:
        coef = 1
        exp = [0] * nvars
        for factor in body.replace("**", "^").split("*"):
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if m.group(1) is not None:
                coef *= int(m.group(1))
            else:
                i = int(m.group(2))
                if i >= nvars:
                    raise DimensionMismatch(f"variable x{i} out of range for {nvars} variables")
                exp[i] += int(m.group(3)) if m.group(3) else 1
        d = sum(exp)
        if degree is None:
            degree = d
        elif d != degree:
            raise ValueError(f"form {text!r} is not homogeneous")
        terms.append((tuple(exp), coef if sign == "+" else -coef))
    return MultiForm(p, nvars, degree, terms)


def form_eval(f: MultiForm, point):
    """Value of ``f`` at a point whose entries are ints mod p or FFElements."""
    if len(point) != f.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, form has {f.nvars} variables")
    if any(isinstance(v, FFElement) for v in point):
        ctx = next(v.ctx for v in point if isinstance(v, FFElement))
        pt = [ctx(v) for v in point]
        total = ctx.zero
        for exp, c in f.terms.items():
            term = ctx(c)
            for v, e in zip(pt, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total
    p = f.p
    total = 0
    for exp, c in f.terms.items():
        term = c
        for v, e in zip(point, exp):
            if e:
                term = term * pow(v, e, p)
        total += term
    return total % p


@dataclass(frozen=True)
class LinearSubstitution:
    """x_pivot := sum(replacement[k] * y_k) where y are the other variables in order.

    ``lift`` maps a point of the smaller space back into the hyperplane.
    """

    p: int
    nvars: int
    pivot: int
    replacement: tuple

    @classmethod
    def solving(cls, form: MultiForm, pivot: int | None = None) -> LinearSubstitution:
        """Substitution that kills the linear ``form`` by solving for ``pivot``.

        Without an explicit pivot the lowest index with a nonzero coefficient is used.
        """
        if form.degree != 1:
            raise ValueError("need a linear form")
        p, n = form.p, form.nvars
        coeffs = [0] * n
        for exp, c in form.terms.items():
            coeffs[exp.index(1)] = c
        if pivot is None:
            pivot = next((j for j, c in enumerate(coeffs) if c), None)
            if pivot is None:
                raise ValueError("linear form is zero")
        if coeffs[pivot] == 0:
            raise ValueError(f"coefficient of x{pivot} is not invertible")
        inv = pow(coeffs[pivot], -1, p)
        repl = tuple(-c * inv % p for j, c in enumerate(coeffs) if j != pivot)
        return cls(p, n, pivot, repl)

    def lift(self, point):
        point = list(point)
        if len(point) != self.nvars - 1:
            raise DimensionMismatch(f"expected {self.nvars - 1} coordinates")
        if any(isinstance(v, FFElement) for v in point):
            ctx = next(v.ctx for v in point if isinstance(v, FFElement))
            val = ctx.zero
            for r, v in zip(self.replacement, point):
                val = val + ctx(v) * r
        else:
            val = sum(r * v for r, v in zip(self.replacement, point)) % self.p
        return tuple(point[:self.pivot] + [val] + point[self.pivot:])

    def images(self) -> list[MultiForm]:
        """Each source variable written as a linear form in the remaining ones."""
        m = self.nvars - 1
        out = []
        k = 0
        for j in range(self.nvars):
            if j == self.pivot:
                out.append(MultiForm.linear(self.p, self.replacement))
            else:
                out.append(MultiForm.variable(self.p, m, k))
                k += 1
        return out


def form_substitute(f: MultiForm, s: LinearSubstitution) -> MultiForm:
    if f.nvars != s.nvars:
        raise DimensionMismatch("substitution and form disagree on the number of variables")
    imgs = s.images()
    m = s.nvars - 1
    # powers of the pivot image are the only non-monomial factors; cache them
    pivot_pows = [MultiForm.constant(s.p, m, 1)]
    out = MultiForm.zero(s.p, m, f.degree)
    for exp, c in f.terms.items():
        while len(pivot_pows) <= exp[s.pivot]:
            pivot_pows.append(pivot_pows[-1] * imgs[s.pivot])
        rest = [0] * m
        k = 0
        for j, e in enumerate(exp):
            if j != s.pivot:
                rest[k] = e
                k += 1
        mono = MultiForm(s.p, m, sum(rest), {tuple(rest): c})
        out = out + mono * pivot_pows[exp[s.pivot]]
    return out


def form_partials(f: MultiForm) -> list[MultiForm]:
    d = max(f.degree - 1, 0)
    out = []
    for i in range(f.nvars):
        terms = {}
        for exp, c in f.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = c * exp[i]
        out.append(MultiForm(f.p, f.nvars, d, terms))
    return out


def _require_quintic(ctx: FieldCtx):
    if ctx.n != 5:
        raise ValueError(f"need a quintic extension, got degree {ctx.n}")


def generic_multiplication_matrix(ctx: FieldCtx) -> list[list[MultiForm]]:
    """5x5 matrix of linear forms: entry (r, c) is the z^r coordinate of a*z^c,
    a = x0 + x1*z + ... + x4*z^4."""
    _require_quintic(ctx)
    n, p = ctx.n, ctx.p
    # coordinates of z^k for k < 2n - 1
    zpow = [ctx.one]
    for _ in range(2 * n - 2):
        zpow.append(zpow[-1] * ctx.gen)
    return [
        [MultiForm.linear(p, [zpow[j + c].coeffs[r] for j in range(n)]) for c in range(n)]
        for r in range(n)
    ]


# Packed monomials for the determinant: 4 bits per variable, slot 0 is t,
# slots 1..n are x0..x(n-1).  Multiplying monomials is adding the packed ints.
_BITS = 4


def _pack(exp):
    k = 0
    for i, e in enumerate(exp):
        k |= e << (_BITS * i)
    return k


def _unpack(k, nslots):
    mask = (1 << _BITS) - 1
    return tuple((k >> (_BITS * i)) & mask for i in range(nslots))


def generic_char_coefficients(ctx: FieldCtx) -> tuple[MultiForm, ...]:
    """(c1, ..., c5) with det(t*I - M(x)) = t^5 + c1 t^4 + c2 t^3 + c3 t^2 + c4 t + c5.

    Leibniz expansion organised row by row: the partial sums over all
    permutations that agree on the remaining rows are shared by memoising on
    the set of unused columns, so each of the 31 column subsets is expanded
    once.  Only ring operations are used, so every characteristic works.
    """
    M = generic_multiplication_matrix(ctx)
    n, p = ctx.n, ctx.p
    t_key = _pack([1] + [0] * n)
    entries = []
    for r in range(n):
        row = []
        for c in range(n):
            poly = {}
            for exp, v in M[r][c].terms.items():
                poly[_pack((0,) + exp)] = -v % p
            if r == c:
                poly[t_key] = 1
            row.append(poly)
        entries.append(row)

    memo = {0: {0: 1}}

    def minor(cols: int) -> dict:
        # determinant of rows (n - popcount(cols))..n-1 restricted to `cols`
        if cols in memo:
            return memo[cols]
        r = n - bin(cols).count("1")
        acc = {}
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            sub = minor(cols & ~(1 << c))
            for k1, v1 in entries[r][c].items():
                v1 = v1 * sign
                for k2, v2 in sub.items():
                    k = k1 + k2
                    acc[k] = acc.get(k, 0) + v1 * v2
            sign = -sign
        acc = {k: v % p for k, v in acc.items() if v % p}
        memo[cols] = acc
        return acc

    det = minor((1 << n) - 1)
    split = [dict() for _ in range(n + 1)]
    for key, v in det.items():
        exp = _unpack(key, n + 1)
        split[n - exp[0]][exp[1:]] = v
    if split[0] != {(0,) * n: 1}:
        raise AssertionError("determinant is not monic in t")
    return tuple(MultiForm(p, n, i, split[i]) for i in range(1, n + 1))

