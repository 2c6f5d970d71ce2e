"""Cubic surfaces in P^3 over GF(p): singular scans, point counts and secant descent.

The descent step takes a point P over GF(p^2) and its Frobenius conjugate
P' and restricts the cubic to the line s*P + u*P'.  Because the surface is
defined over GF(p), the restricted binary cubic has roots at (1:0) and (0:1)
and factors as s*u*(alpha*s + beta*u), with beta the conjugate of alpha.  The
third root Q = beta*P - alpha*P' is therefore fixed by Frobenius, i.e. a
GF(p)-point of the surface.
"""

from __future__ import annotations

import json
from itertools import product
from dataclasses import dataclass

from .ff import FFElement, FieldCtx, find_irreducible, frobenius, make_extension, make_prime_field
from .forms import MultiForm, form_eval, form_partials, parse_form
from .projective import check_budget, chart_order, field_points, normalize, projective_size

DESCENDED = "descended"
ALREADY_RATIONAL = "already_rational"
LINE_ON_SURFACE = "line_on_surface"
TANGENT_SECANT = "tangent_secant"


class NotOnSurface(ValueError):
    pass


class CubicSurface:
    __slots__ = ("form",)

    def __init__(self, form: MultiForm):
        if form.nvars != 4 or form.degree != 3:
            raise ValueError("a cubic surface needs a degree-3 form in 4 variables")
        if form.is_zero():
            raise ValueError("the zero form does not define a surface")
        self.form = form

    @property
    def p(self) -> int:
        return self.form.p

    @classmethod
    def parse(cls, text: str, p: int) -> CubicSurface:
        """Inline text (``"x0^3 + x1^3 + x2^3 + x3^3"``) or MultiForm JSON."""
        s = text.strip()
        if s.startswith("{"):
            return cls(MultiForm.from_json(json.loads(s), p))
        return cls(parse_form(s, p, 4))

    def __call__(self, point):
        return form_eval(self.form, point)

    def rational_points(self):
        for pt in chart_order(self.p, 4):
            if self(pt) == 0:
                yield pt

    def points_over(self, ctx: FieldCtx):
        for pt in field_points(ctx, 4):
            if self(pt).is_zero():
                yield pt

    def __repr__(self):
        return f"CubicSurface({self.form.to_text()!r}, p={self.p})"


def quadratic_extension(p: int) -> FieldCtx:
    return make_extension(make_prime_field(p), find_irreducible(p, 2))


@dataclass(frozen=True)
class QuadExtPoint:
    """Point of P^3 over a quadratic extension GF(p^2), normalized."""

    coords: tuple
    ctx: FieldCtx

    def __post_init__(self):
        if self.ctx.n != 2:
            raise ValueError("QuadExtPoint needs a degree-2 extension")
        pts = tuple(self.ctx(c) for c in self.coords)
        object.__setattr__(self, "coords", normalize(pts))

    def conjugate(self) -> QuadExtPoint:
        return QuadExtPoint(tuple(frobenius(c, 1) for c in self.coords), self.ctx)

    def to_text(self) -> list[str]:
        return [c.to_text("w") for c in self.coords]


@dataclass(frozen=True)
class DescentOutcome:
    outcome: str
    point: tuple | None = None  # GF(p) coordinates for the rational outcomes

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "point": list(self.point) if self.point is not None else None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def rationality_test(v):
    """GF(p) coordinates of the projective point ``v`` if it is Frobenius-fixed, else None.

    Vectors already inside the prime field come back as they are; otherwise the
    point is normalized first so a non-rational common scalar cancels.
    """
    if not any(v):
        raise ValueError("zero vector is not a projective point")
    if all(isinstance(c, int) for c in v):
        return tuple(v)
    if all(isinstance(c, int) or c == frobenius(c, 1) for c in v):
        return tuple(c if isinstance(c, int) else c.coeffs[0] for c in v)
    ctx = next(c.ctx for c in v if isinstance(c, FFElement))
    w = normalize(tuple(ctx(c) for c in v))
    if all(c == frobenius(c, 1) for c in w):
        return tuple(c.coeffs[0] for c in w)
    return None


def _binary_restriction(form: MultiForm, P, Q):
    """Coefficients of g(s, u) = form(s*P + u*Q), indexed by the power of u."""
    ctx = P[0].ctx
    d = form.degree
    g = [ctx.zero] * (d + 1)
    for exp, c in form.terms.items():
        poly = [ctx(c)]
        for i, e in enumerate(exp):
            for _ in range(e):
                nxt = [ctx.zero] * (len(poly) + 1)
                for k, a in enumerate(poly):
                    nxt[k] = nxt[k] + a * P[i]
                    nxt[k + 1] = nxt[k + 1] + a * Q[i]
                poly = nxt
        for k, a in enumerate(poly):
            g[k] = g[k] + a
    return g


def secant_descent(X: CubicSurface, P) -> DescentOutcome:
    if not isinstance(P, QuadExtPoint):
        ctx = next(c.ctx for c in P if isinstance(c, FFElement))
        P = QuadExtPoint(tuple(P), ctx)
    if not X(P.coords).is_zero():
        raise NotOnSurface("point does not lie on the surface")
    rat = rationality_test(P.coords)
    if rat is not None:
        return DescentOutcome(ALREADY_RATIONAL, rat)
    Pc = P.conjugate()
    g = _binary_restriction(X.form, P.coords, Pc.coords)
    # g(1,0) = X(P) and g(0,1) = X(P'), both zero: deflate by s and by u
    assert g[0].is_zero() and g[3].is_zero()
    alpha, beta = g[1], g[2]
    if alpha.is_zero() and beta.is_zero():
        return DescentOutcome(LINE_ON_SURFACE)
    if alpha.is_zero() or beta.is_zero():
        return DescentOutcome(TANGENT_SECANT)
    Q = tuple(beta * a - alpha * b for a, b in zip(P.coords, Pc.coords))
    rat = rationality_test(Q)
    if rat is None or X(rat) != 0:
        raise AssertionError("third intersection is not a rational point of the surface")
    return DescentOutcome(DESCENDED, normalize_ints(rat, X.p))


def normalize_ints(v, p):
    lead = next(c for c in v if c % p)
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in v)


def count_points(X: CubicSurface, budget: int | None = 10 ** 7) -> int:
    check_budget(projective_size(X.p, 4), budget, "point count")
    return sum(1 for _ in X.rational_points())


@dataclass(frozen=True)
class SingularPoint:
    coords: tuple  # ints over GF(p), FFElements otherwise
    degree: int  # degree of the smallest field of definition

    def to_dict(self) -> dict:
        if self.degree == 1:
            return {"degree": 1, "coords": list(self.coords)}
        return {"degree": self.degree, "coords": [c.to_text("w") for c in self.coords]}


def _definition_degree(pt, d):
    for k in range(1, d + 1):
        if d % k == 0 and all(frobenius(c, k) == c for c in pt):
            return k
    return d


class _Tables:
    """Addition/multiplication tables for GF(p^d), elements indexed as in ``FieldCtx.from_index``."""

    def __init__(self, ctx: FieldCtx, maxexp: int):
        self.ctx = ctx
        q = ctx.q
        elems = list(ctx.elements())
        index = {e.coeffs: i for i, e in enumerate(elems)}
        self.elems = elems
        self.add = [[index[(a + b).coeffs] for b in elems] for a in elems]
        self.mul = [[index[(a * b).coeffs] for b in elems] for a in elems]
        self.pw = [[index[(a ** e).coeffs] for e in range(maxexp + 1)] for a in elems]
        self.q = q

    def compile(self, form: MultiForm):
        return [(c % self.ctx.p,) + exp for exp, c in form.terms.items()]

    def evaluate(self, terms, pt) -> int:
        add, mul, pw = self.add, self.mul, self.pw
        acc = 0
        for coef, *exp in terms:
            v = coef  # prime-field residues have index equal to their value
            for x, e in zip(pt, exp):
                if e:
                    v = mul[v][pw[x][e]]
            acc = add[acc][v]
        return acc


def jacobian_singular_scan(X: CubicSurface, maxdeg: int = 2, budget: int | None = 10 ** 7):
    """Points over GF(p^d), d <= maxdeg, where X and its four partials all vanish.

    Each point is reported once, over its smallest field of definition.  An
    empty result only says that no singular point exists up to ``maxdeg``.
    """
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    p = X.p
    cost = sum(projective_size(p ** d, 4) for d in range(1, maxdeg + 1))
    check_budget(cost, budget, "singular scan")
    partials = form_partials(X.form)
    found = []
    for pt in chart_order(p, 4):
        if X(pt) == 0 and all(form_eval(g, pt) == 0 for g in partials):
            found.append(SingularPoint(pt, 1))
    for d in range(2, maxdeg + 1):
        ctx = make_extension(make_prime_field(p), find_irreducible(p, d))
        tab = _Tables(ctx, X.form.degree)
        surf = tab.compile(X.form)
        grads = [tab.compile(g) for g in partials]
        for k in range(4):
            head = (0,) * k + (1,)
            for tail in product(range(tab.q), repeat=3 - k):
                pt = head + tail
                if tab.evaluate(surf, pt) or any(tab.evaluate(g, pt) for g in grads):
                    continue
                coords = tuple(tab.elems[i] for i in pt)
                if _definition_degree(coords, d) == d:
                    found.append(SingularPoint(coords, d))
    return found
