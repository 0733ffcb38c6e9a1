"""Freeness analysis from counts alone: the du Plessis-Wall ceiling on the
total Tjurina number and the quadratic whose integer roots are candidate
exponents.

For a reduced plane curve of degree ``d`` with ``r = mdr(f)``:

    r < d/2:        tau <= (d-1)(d-r-1) + r^2, equality iff the curve is free;
    d/2 <= r <= d-1: the ceiling drops by C(2r-d+2, 2).

Eliminating tau via the naive count turns the freeness equality into

    r^2 - r(d-1) + (d-1)^2 = tau,

a quadratic in r with discriminant ``4 tau - 3 (d-1)^2``.  A vector is
"freeness-compatible" when that quadratic has an integer root below d/2;
this is a necessary condition read off the counts, deliberately not called
"free" - actual freeness needs the computed mdr (see the syzygies module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .combinatorics import WeakCombinatorics


class ExponentPair(NamedTuple):
    """Exponents (d1, d2) = (mdr, d-1-mdr) of a free curve; d1 <= d2."""

    d1: int
    d2: int


class FreenessVerdict(str, Enum):
    COMPATIBLE = "freeness-compatible"
    NOT_COMPATIBLE = "not-compatible"
    TRIVIAL_PENCIL = "trivial-pencil"


@dataclass(frozen=True)
class FreenessReport:
    """Integer-root analysis of the freeness quadratic for one vector."""

    discriminant: int
    integer_roots: tuple[int, ...]
    exponents: ExponentPair | None
    verdict: FreenessVerdict


def dpw_tau_max(d: int, r: int) -> int:
    """du Plessis-Wall ceiling on the total Tjurina number of a degree-``d``
    reduced curve with ``mdr = r``; the correction binomial vanishes for
    ``2r - d + 2 <= 1``, so the two regimes agree at the boundary."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    if not 0 <= r <= d - 1:
        raise ValueError(f"r must lie in [0, {d - 1}], got {r}")
    base = (d - 1) * (d - r - 1) + r * r
    t = 2 * r - d + 2
    return base - (t * (t - 1) // 2 if t >= 2 else 0)


def freeness_roots(d: int, tau: int) -> tuple[int, tuple[int, ...]]:
    """Discriminant and integer roots in [0, d-1] of
    ``r^2 - r(d-1) + (d-1)^2 = tau``.

    No roots when the discriminant is negative or not a perfect square.
    Roots come symmetric about (d-1)/2: r is a root iff d-1-r is.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    if tau < 0:
        raise ValueError("total Tjurina number cannot be negative")
    disc = 4 * tau - 3 * (d - 1) * (d - 1)
    if disc < 0:
        return disc, ()
    s = math.isqrt(disc)
    if s * s != disc or (d - 1 - s) % 2 != 0:
        return disc, ()
    roots = sorted({(d - 1 - s) // 2, (d - 1 + s) // 2})
    return disc, tuple(r for r in roots if 0 <= r <= d - 1)


def freeness_compatible(wc: WeakCombinatorics) -> FreenessReport:
    """Could an arrangement with these counts be free?

    Compatible iff some integer root ``r < d/2`` of the freeness quadratic
    attains the du Plessis-Wall ceiling (for such roots the equality is
    automatic); the exponents are then ``(r, d-1-r)``.  Pencils are trivially
    free with exponents ``(0, d-1)`` and get their own verdict.  Roots at or
    above d/2 are still reported but never make the vector compatible.
    """
    if not wc.is_consistent():
        raise ValueError(f"{wc} is not consistent")
    tau = wc.total_tjurina()
    disc, roots = freeness_roots(wc.d, tau)
    if wc.is_pencil():
        return FreenessReport(disc, roots, ExponentPair(0, wc.d - 1), FreenessVerdict.TRIVIAL_PENCIL)
    for r in roots:
        if 2 * r < wc.d and tau == dpw_tau_max(wc.d, r):
            return FreenessReport(disc, roots, ExponentPair(r, wc.d - 1 - r), FreenessVerdict.COMPATIBLE)
    return FreenessReport(disc, roots, None, FreenessVerdict.NOT_COMPATIBLE)
