"""Quintic Hermite pipeline over GF(p).

For E = GF(p)[z]/(f) of degree 5, the element a = x0 + x1 z + ... + x4 z^4
has characteristic polynomial t^5 + c1 t^4 + ... + c5 whose coefficients are
forms in x.  A point of {c1 = c3 = 0} other than (1:0:0:0:0) gives an element
whose minimal polynomial is t^5 + c2 t^3 + c4 t + c5.  The pipeline solves
c1 = 0 linearly, scans the resulting cubic surface in P^3 for a point, and
certifies the answer by recomputing everything from the element itself.
"""

from __future__ import annotations

import json
import time
from itertools import product
from dataclasses import dataclass, field

from .ff import (FFElement, FieldCtx, UniPoly, char_poly_element, make_extension,
                 make_prime_field, minimal_polynomial, parse_poly)
from .forms import LinearSubstitution, MultiForm, form_eval, form_substitute, generic_char_coefficients
from .projective import ProjPoint, chart_order, check_budget, projective_size

SCHEMA = 1


class NoPointFound(LookupError):
    pass


class BadPoint(ValueError):
    pass


class ZeroLinearForm(ValueError):
    pass


@dataclass(frozen=True)
class HermiteSystem:
    ctx: FieldCtx
    c1: MultiForm
    c3: MultiForm
    coefficients: tuple  # (c1, ..., c5)


def build_system(ctx: FieldCtx) -> HermiteSystem:
    cs = generic_char_coefficients(ctx)
    return HermiteSystem(ctx, cs[0], cs[2], cs)


def eliminate_c1(sys: HermiteSystem):
    """Solve c1 = 0 for its lowest-index variable and push that into c3.

    Returns ``(cubic, subst)`` with ``cubic`` a form in the 4 remaining variables.
    """
    if sys.c1.is_zero():
        raise ZeroLinearForm("c1 vanishes identically; the trace form is degenerate")
    subst = LinearSubstitution.solving(sys.c1)
    return form_substitute(sys.c3, subst), subst


def _compile(f: MultiForm):
    return [(c,) + exp for exp, c in f.terms.items()]


def search_point(cubic: MultiForm, ctx: FieldCtx, excluded: ProjPoint | None = None) -> ProjPoint:
    """First zero of ``cubic`` in P^3(GF(p)) in chart/graded-lex order, skipping ``excluded``."""
    if cubic.is_zero():
        raise ValueError("cubic form is zero")
    p = ctx.p
    if ctx.n != 1 or cubic.p != p:
        raise ValueError("search runs over the prime field of the cubic")
    terms = _compile(cubic)
    pw = [[pow(v, e, p) for e in range(cubic.degree + 1)] for v in range(p)]
    skip = excluded.coords if excluded is not None else None
    for pt in chart_order(p, cubic.nvars):
        a, b, c, d = pt
        pa, pb, pc, pd = pw[a], pw[b], pw[c], pw[d]
        s = 0
        for coef, ea, eb, ec, ed in terms:
            s += coef * pa[ea] * pb[eb] * pc[ec] * pd[ed]
        if s % p == 0 and pt != skip:
            return ProjPoint(pt, p)
    raise NoPointFound("no admissible point on the cubic surface")


def _is_trivial(coords) -> bool:
    return coords[0] != 0 and not any(coords[1:])


def recover_element(point: ProjPoint, subst: LinearSubstitution, ctx: FieldCtx):
    """Lift a surface point to (x0, ..., x4) and return (a, minimal polynomial of a)."""
    coords = subst.lift(point.coords)
    if _is_trivial(coords):
        raise BadPoint("lift is (1:0:0:0:0); the element is in the prime field")
    a = ctx(list(coords))
    mp = minimal_polynomial(a)
    if mp.degree != 5 or mp.coeff(4) or mp.coeff(2):
        raise AssertionError(f"recovered minimal polynomial {mp} is not of Hermite shape")
    return a, mp


@dataclass
class HermiteReport:
    p: int
    modulus: UniPoly
    point: tuple  # lifted (x0, ..., x4), normalized
    surface_point: tuple  # the point on the cubic in P^3
    element: FFElement
    minpoly: UniPoly
    c_pattern_ok: bool
    primitive_ok: bool
    on_surface_ok: bool
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.c_pattern_ok and self.primitive_ok and self.on_surface_ok

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "schema": SCHEMA,
            "p": self.p,
            "modulus": self.modulus.to_text("x"),
            "point": list(self.point),
            "surface_point": list(self.surface_point),
            "element": self.element.to_text("z"),
            "minpoly": self.minpoly.to_text("x"),
            "c": {"c2": self.minpoly.coeff(3), "c4": self.minpoly.coeff(1), "c5": self.minpoly.coeff(0)},
            "c_pattern_ok": self.c_pattern_ok,
            "primitive_ok": self.primitive_ok,
            "on_surface_ok": self.on_surface_ok,
        }
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=False)


def build_report(sys: HermiteSystem, point4: ProjPoint, subst: LinearSubstitution,
                 elapsed_ms: float = 0.0) -> HermiteReport:
    """Assemble a report; every verdict is recomputed here from the point alone."""
    ctx = sys.ctx
    coords = subst.lift(point4.coords)
    a = ctx(list(coords))
    mp = minimal_polynomial(a)
    cp = char_poly_element(a)
    on_surface = (
        any(coords)
        and form_eval(sys.c1, coords) == 0
        and form_eval(sys.c3, coords) == 0
        and cp.coeff(4) == 0
        and cp.coeff(2) == 0
    )
    primitive = mp.degree == 5 and mp == cp and not _is_trivial(coords)
    pattern = (
        mp.is_monic()
        and mp.degree == 5
        and mp.coeff(4) == 0
        and mp.coeff(2) == 0
        and mp(a).is_zero()
    )
    return HermiteReport(
        p=ctx.p,
        modulus=ctx.modulus,
        point=ProjPoint(coords, ctx.p).coords,
        surface_point=point4.coords,
        element=a,
        minpoly=mp,
        c_pattern_ok=bool(pattern),
        primitive_ok=bool(primitive),
        on_surface_ok=bool(on_surface),
        elapsed_ms=elapsed_ms,
    )


def quintic_field(p: int, modulus) -> FieldCtx:
    base = make_prime_field(p)
    if isinstance(modulus, str):
        modulus = parse_poly(modulus, p)
    elif not isinstance(modulus, UniPoly):
        modulus = UniPoly(modulus, p)
    if modulus.degree != 5:
        raise ValueError(f"modulus must have degree 5, got {modulus.degree}")
    return make_extension(base, modulus)


def hermite_pipeline(p: int, modulus) -> HermiteReport:
    """Find a ∈ GF(p)[z]/(modulus) with minimal polynomial x^5 + c2 x^3 + c4 x + c5."""
    start = time.perf_counter()
    ctx = quintic_field(p, modulus)
    sys = build_system(ctx)
    cubic, subst = eliminate_c1(sys)
    excluded = None
    if subst.pivot != 0:
        # only in characteristic 5: (1:0:0:0:0) lies on the hyperplane and
        # corresponds to (1:0:0:0) on the cubic
        excluded = ProjPoint((1, 0, 0, 0), p)
    point = search_point(cubic, ctx.prime_field(), excluded)
    recover_element(point, subst, ctx)
    elapsed = (time.perf_counter() - start) * 1000
    return build_report(sys, point, subst, elapsed)


def affine_zero_count(sys: HermiteSystem, budget: int | None = 100_000) -> int:
    """Common zeros of (c1, c3) in GF(p)^5, origin included, by brute force."""
    p = sys.ctx.p
    check_budget(p ** 5, budget, "affine count")
    lin = [0] * 5
    for exp, c in sys.c1.terms.items():
        lin[exp.index(1)] = c
    cubic = _compile(sys.c3)
    count = 0
    for v in product(range(p), repeat=5):
        if sum(a * b for a, b in zip(lin, v)) % p:
            continue
        s = 0
        for coef, *exp in cubic:
            t = coef
            for x, e in zip(v, exp):
                if e:
                    t *= x ** e
            s += t
        if s % p == 0:
            count += 1
    return count


def projective_zero_count(sys: HermiteSystem, budget: int | None = 100_000) -> int:
    """Common zeros of (c1, c3) in P^4(GF(p)), enumerated directly."""
    p = sys.ctx.p
    check_budget(projective_size(p, 5), budget, "projective count")
    return sum(
        1 for v in chart_order(p, 5)
        if form_eval(sys.c1, v) == 0 and form_eval(sys.c3, v) == 0
    )

