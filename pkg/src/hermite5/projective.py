"""Projective points and deterministic enumeration of P^m over a finite field."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .ff import FFElement, FieldCtx, invert


class BudgetExceeded(RuntimeError):
    pass


def check_budget(cost: int, budget: int | None, what: str):
    if budget is not None and cost > budget:
        raise BudgetExceeded(f"{what} needs {cost} evaluations, budget is {budget}")


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^(m-1)(GF(p)), stored with its first nonzero coordinate equal to 1."""

    coords: tuple
    p: int

    def __post_init__(self):
        coords = tuple(int(c) % self.p for c in self.coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        inv = pow(lead, -1, self.p)
        object.__setattr__(self, "coords", tuple(c * inv % self.p for c in coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def normalize(coords):
    """Scale a coordinate vector (ints or FFElements) so its first nonzero entry is 1."""
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("all coordinates are zero")
    if isinstance(lead, FFElement):
        inv = invert(lead)
        return tuple(c * inv for c in coords)
    raise TypeError("use ProjPoint for prime-field coordinates")


@lru_cache(maxsize=None)
def _graded_lex(p: int, k: int) -> tuple:
    return tuple(sorted(product(range(p), repeat=k), key=lambda v: (sum(v), v)))


def chart_order(p: int, nvars: int):
    """Normalized points of P^(nvars-1)(GF(p)) in search order.

    Charts x0 = 1, then x0 = 0, x1 = 1, and so on; inside a chart the free
    coordinates run in graded-lex order (coordinate sum, then lexicographic).
    """
    for k in range(nvars):
        head = (0,) * k + (1,)
        for tail in _graded_lex(p, nvars - k - 1):
            yield head + tail


def projective_size(q: int, nvars: int) -> int:
    return sum(q ** k for k in range(nvars))


def field_points(ctx: FieldCtx, nvars: int):
    """Normalized points of P^(nvars-1) over an arbitrary FieldCtx, as FFElement tuples."""
    elems = list(ctx.elements())
    zero, one = ctx.zero, ctx.one
    for k in range(nvars):
        head = (zero,) * k + (one,)
        for tail in product(elems, repeat=nvars - k - 1):
            yield head + tail
