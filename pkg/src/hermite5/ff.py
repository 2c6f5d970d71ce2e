"""Arithmetic in GF(p) and in GF(p^n) = GF(p)[z]/(f).

Elements of an extension are stored as coefficient tuples in the power basis
1, z, ..., z^(n-1).  Polynomials over the prime field are dense coefficient
tuples in ascending order.  Everything here is exact and pure Python; the
fields involved are tiny (p <= 13, n <= 5) so no tables are precomputed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

# Degree of the zero polynomial.  -inf keeps deg(fg) = deg f + deg g true.
DEG_ZERO = float("-inf")


class FieldError(ArithmeticError):
    pass


class NotPrime(FieldError, ValueError):
    pass


class NotIrreducible(FieldError, ValueError):
    pass


class NotMonic(FieldError, ValueError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class PolyParseError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial kernels on lists of residues, ascending order

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _psub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _trim(out)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _pdivmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = [x % p for x in a]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv_lead % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), mod, p)
    return result


# ---------------------------------------------------------------------------
# univariate polynomials over GF(p)

class UniPoly:
    """Dense polynomial over GF(p), coefficients ascending by degree."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Sequence[int], p: int):
        self.p = p
        self.coeffs = tuple(_trim([int(c) % p for c in coeffs]))

    @classmethod
    def monomial(cls, deg: int, p: int, coef: int = 1) -> UniPoly:
        return cls([0] * deg + [coef], p)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def monic(self) -> UniPoly:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no monic associate")
        inv = pow(self.coeffs[-1], -1, self.p)
        return UniPoly([c * inv for c in self.coeffs], self.p)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return UniPoly([other], self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniPoly(_padd(self.coeffs, other.coeffs, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniPoly(_psub(self.coeffs, other.coeffs, self.p), self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniPoly(_pmul(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = _pdivmod(self.coeffs, other.coeffs, self.p)
        return UniPoly(q, self.p), UniPoly(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == UniPoly([other], self.p).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __call__(self, x):
        """Horner evaluation at an int (mod p) or an FFElement."""
        if isinstance(x, FFElement):
            acc = x.ctx.zero
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def gcd(self, other: UniPoly) -> UniPoly:
        return UniPoly(_pgcd(self.coeffs, other.coeffs, self.p), self.p)

    def to_text(self, var: str = "x") -> str:
        return format_poly(self.coeffs, var)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"UniPoly({self.to_text()!r}, p={self.p})"


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    """Canonical text: descending monomials joined by ' + ', e.g. 'x^5 + 3*x + 1'."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) if parts else "0"


_COMPACT = re.compile(r"^-?\d+(,-?\d+)+$")
_TERM = re.compile(r"^(\d+)?\*?(?:([A-Za-z_]\w*)(?:(?:\^|\*\*)(\d+))?)?$")


def parse_coeffs(text: str, var: str | None = None) -> list[int]:
    """Parse monomial text or a compact ascending coefficient list into ints.

    Coefficients are returned unreduced; the caller reduces mod p.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError("empty polynomial")
    if _COMPACT.match(s):
        return [int(t) for t in s.split(",")]
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise PolyParseError(f"cannot parse polynomial {text!r}")
    out: dict[int, int] = {}
    seen_var = var
    for sign, body in pieces:
        m = _TERM.match(body)
        if not m or body == "" or (m.group(1) is None and m.group(2) is None):
            raise PolyParseError(f"bad term {body!r} in {text!r}")
        coef = int(m.group(1)) if m.group(1) is not None else 1
        name = m.group(2)
        if name is None:
            if body.endswith("*"):
                raise PolyParseError(f"bad term {body!r} in {text!r}")
            exp = 0
        else:
            if seen_var is None:
                seen_var = name
            elif name != seen_var:
                raise PolyParseError(f"unexpected variable {name!r} in {text!r}")
            exp = int(m.group(3)) if m.group(3) is not None else 1
        out[exp] = out.get(exp, 0) + (coef if sign == "+" else -coef)
    deg = max(out)
    return [out.get(i, 0) for i in range(deg + 1)]


def parse_poly(text: str, p: int, var: str | None = None) -> UniPoly:
    return UniPoly(parse_coeffs(text, var), p)


# ---------------------------------------------------------------------------
# fields and elements

@dataclass(frozen=True)
class FieldCtx:
    """GF(p) when ``modulus`` is None, otherwise GF(p)[z]/(modulus).

    Build through :func:`make_prime_field` / :func:`make_extension`, which
    check primality and irreducibility.
    """

    p: int
    n: int = 1
    modulus: UniPoly | None = None

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def __call__(self, value) -> FFElement:
        if isinstance(value, FFElement):
            if value.ctx == self:
                return value
            if value.ctx.p == self.p and value.ctx.is_prime_field:
                return self(value.coeffs[0])
            raise ValueError("element belongs to a different field")
        if isinstance(value, int):
            return FFElement(self, (value % self.p,) + (0,) * (self.n - 1))
        if isinstance(value, str):
            value = parse_coeffs(value)
        return FFElement(self, self._reduce([int(c) for c in value]))

    def _reduce(self, c) -> tuple:
        p, n = self.p, self.n
        c = list(c)
        if len(c) > n:
            m = self.modulus.coeffs
            for k in range(len(c) - 1, n - 1, -1):
                top = c[k] % p
                if top:
                    base = k - n
                    for j in range(n):
                        c[base + j] -= top * m[j]
            c = c[:n]
        c = [x % p for x in c]
        return tuple(c) + (0,) * (n - len(c))

    @property
    def zero(self) -> FFElement:
        return FFElement(self, (0,) * self.n)

    @property
    def one(self) -> FFElement:
        return self(1)

    @property
    def gen(self) -> FFElement:
        if self.n == 1:
            raise ValueError("prime field has no distinguished generator")
        return self([0, 1])

    def prime_field(self) -> FieldCtx:
        return self if self.n == 1 else FieldCtx(self.p)

    def from_index(self, k: int) -> FFElement:
        """Element whose coordinates are the base-p digits of k."""
        c = []
        for _ in range(self.n):
            k, r = divmod(k, self.p)
            c.append(r)
        return FFElement(self, tuple(c))

    def elements(self) -> Iterator[FFElement]:
        for k in range(self.q):
            yield self.from_index(k)

    def random(self, rng) -> FFElement:
        return FFElement(self, tuple(rng.randrange(self.p) for _ in range(self.n)))

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}) mod {self.modulus.to_text('z')}"


class FFElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                return self.ctx(other)
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FFElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FFElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ctx.p
        return FFElement(self.ctx, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if ctx.n == 1:
            return FFElement(ctx, (self.coeffs[0] * other.coeffs[0] % ctx.p,))
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * ctx.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return FFElement(ctx, ctx._reduce(prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * invert(other)

    def __rtruediv__(self, other):
        return self.ctx(other) * invert(self)

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        if isinstance(other, FFElement):
            return self.coeffs == other.coeffs and (other.ctx is self.ctx or other.ctx == self.ctx)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self):
        if not self.in_prime_field():
            raise ValueError(f"{self} is not in the prime field")
        return self.coeffs[0]

    def to_text(self, var: str = "z") -> str:
        return format_poly(self.coeffs, var)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FFElement({self.to_text()!r} in {self.ctx!r})"


def make_prime_field(p: int) -> FieldCtx:
    if not isinstance(p, int) or p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return FieldCtx(p)


def make_extension(base: FieldCtx, modulus) -> FieldCtx:
    """GF(p)[z]/(modulus).  ``modulus`` may be a UniPoly or polynomial text."""
    if base.n != 1:
        raise ValueError("extensions are built over a prime field only")
    if isinstance(modulus, str):
        modulus = parse_poly(modulus, base.p)
    elif not isinstance(modulus, UniPoly):
        modulus = UniPoly(modulus, base.p)
    if modulus.p != base.p:
        raise ValueError("modulus characteristic does not match base field")
    if modulus.degree < 2:
        raise ValueError("extension modulus must have degree >= 2")
    if not modulus.is_monic():
        raise NotMonic(f"{modulus} is not monic")
    if not is_irreducible(modulus):
        raise NotIrreducible(f"{modulus} is reducible over GF({base.p})")
    return FieldCtx(base.p, modulus.degree, modulus)


def is_irreducible(f: UniPoly) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1 for primes l | n."""
    n = f.degree
    if n == DEG_ZERO or n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    mod = list(f.monic().coeffs)
    x = [0, 1]

    def x_pow_p_pow(k):
        r = x
        for _ in range(k):
            r = _ppowmod(r, p, mod, p)
        return r

    for ell in prime_factors(n):
        h = _psub(x_pow_p_pow(n // ell), x, p)
        if len(_pgcd(mod, h, p)) != 1:
            return False
    return _psub(x_pow_p_pow(n), x, p) == []


def iter_monic(p: int, n: int) -> Iterator[UniPoly]:
    """All monic degree-n polynomials, ordered by the base-p value of (c_{n-1} ... c_0)."""
    for k in range(p ** n):
        c = []
        for _ in range(n):
            k, r = divmod(k, p)
            c.append(r)
        yield UniPoly(c + [1], p)


def iter_irreducible(p: int, n: int) -> Iterator[UniPoly]:
    if n == 1:
        yield from iter_monic(p, 1)
        return
    for f in iter_monic(p, n):
        # cheap root screen before the full test
        if f.coeffs[0] == 0:
            continue
        if any(f(r) == 0 for r in range(p)):
            continue
        if is_irreducible(f):
            yield f


def find_irreducible(p: int, n: int) -> UniPoly:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return next(iter_irreducible(p, n))


def _mobius(n: int) -> int:
    fs = prime_factors(n)
    m = n
    for f in fs:
        m //= f
    if m != 1:
        return 0
    return -1 if len(fs) % 2 else 1


def necklace_count(p: int, n: int) -> int:
    """Number of monic irreducible polynomials of degree n over GF(p)."""
    total = sum(_mobius(d) * p ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def invert(a: FFElement) -> FFElement:
    ctx = a.ctx
    if a.is_zero():
        raise DivisionByZero("zero has no inverse")
    p = ctx.p
    if ctx.n == 1:
        return FFElement(ctx, (pow(a.coeffs[0], -1, p),))
    # extended Euclid: track s with s*a = r mod modulus
    r0, r1 = list(ctx.modulus.coeffs), _trim(a.coeffs)
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    # r0 is a nonzero constant because the modulus is irreducible
    inv_c = pow(r0[0], -1, p)
    return FFElement(ctx, ctx._reduce([c * inv_c for c in s0]))


def frobenius(a: FFElement, k: int = 1) -> FFElement:
    """a^(p^k), by k successive p-th powers."""
    for _ in range(k):
        a = a ** a.ctx.p
    return a


def trace_power(ctx: FieldCtx, i: int) -> int:
    """tr(z^i): the trace of the i-th power of the companion matrix of the modulus."""
    if ctx.n == 1:
        raise ValueError("trace_power needs an extension field")
    zi = ctx.gen ** i
    col = zi
    total = 0
    # diagonal of multiplication-by-z^i in the basis 1, z, ..., z^(n-1)
    for j in range(ctx.n):
        total += col.coeffs[j]
        col = col * ctx.gen
    return total % ctx.p


def trace(a: FFElement) -> int:
    ctx = a.ctx
    if ctx.n == 1:
        return a.coeffs[0]
    return sum(c * trace_power(ctx, i) for i, c in enumerate(a.coeffs)) % ctx.p


def minimal_polynomial(a: FFElement) -> UniPoly:
    """Smallest linear dependency among 1, a, a^2, ... by incremental elimination."""
    ctx = a.ctx
    p, n = ctx.p, ctx.n
    pivots = []  # (pivot column, reduced vector, combination over powers of a)
    power = ctx.one
    for k in range(n + 1):
        vec = list(power.coeffs)
        combo = [0] * k + [1]
        for col, pvec, pcombo in pivots:
            c = vec[col]
            if c:
                vec = [(x - c * y) % p for x, y in zip(vec, pvec)]
                combo = _psub(combo, [c * y for y in pcombo], p)
        nz = next((j for j, x in enumerate(vec) if x), None)
        if nz is None:
            return UniPoly(combo, p)
        inv = pow(vec[nz], -1, p)
        pivots.append((nz, [x * inv % p for x in vec], [x * inv % p for x in combo]))
        power = power * a
    raise AssertionError("no dependency found among n+1 powers")


def char_poly_element(a: FFElement) -> UniPoly:
    """Characteristic polynomial over GF(p) as the product of (t - a^(p^i)), i < n."""
    ctx = a.ctx
    poly = [ctx.one]
    conj = a
    for _ in range(ctx.n):
        nxt = [ctx.zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * conj
        poly = nxt
        conj = conj ** ctx.p
    coeffs = []
    for c in poly:
        if not c.in_prime_field():
            raise AssertionError("conjugate product left the prime field")
        coeffs.append(c.coeffs[0])
    return UniPoly(coeffs, ctx.p)
