"""Chern numbers of the log surface attached to a line arrangement.

Blowing up every point of multiplicity >= 3 and removing the reduced total
transform of the arrangement leaves an open surface whose Chern numbers are
exact functions of the counts:

    c1^2 = 9 - 5d + sum_{k>=2} (3k-4) n_k
    c2   = 3 - 2d + sum_{k>=2} (k-1) n_k

defined here for d >= 6 and n_d = 0 (the construction needs the arrangement
to be far from a pencil).  For M-arrangements c2 collapses to a function of
the degree alone, and the ratio c1^2/c2 obeys degree-wise bounds that cap at
11/4 (odd degree) and 14/5 (even degree); both facts are implemented as
exact rational checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import WeakCombinatorics, is_m_arrangement


@dataclass(frozen=True)
class ChernPair:
    """Exact Chern numbers of the log surface; ratio only when c2 != 0."""

    c1_sq: int
    c2: int

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.c1_sq, self.c2) if self.c2 != 0 else None


def chern_numbers(wc: WeakCombinatorics) -> ChernPair:
    """Evaluate both Chern numbers; refuses d < 6 or arrangements with a
    point on all lines, where the construction does not apply."""
    if wc.d < 6:
        raise ValueError("the log-surface construction needs at least 6 lines")
    if wc.n(wc.d) > 0:
        raise ValueError("the log-surface construction needs n_d = 0")
    c1_sq = 9 - 5 * wc.d + sum((3 * k - 4) * nk for k, nk in wc.counts)
    c2 = 3 - 2 * wc.d + sum((k - 1) * nk for k, nk in wc.counts)
    return ChernPair(c1_sq, c2)


def m_ratio_bound(d: int) -> Fraction:
    """Degree-wise ceiling of c1^2/c2 over M-arrangements:

        odd  d = 2m+1 >= 9:  (8m^2 - 17m + 6) / (3m(m-2))
        even d = 2m  >= 10:  (8m^2 - 25m + 9) / (3m(m-3))

    always at most 11/4 (odd) resp. 14/5 (even).
    """
    m, odd = divmod(d, 2)
    if odd and d >= 9:
        return Fraction(8 * m * m - 17 * m + 6, 3 * m * (m - 2))
    if not odd and d >= 10:
        return Fraction(8 * m * m - 25 * m + 9, 3 * m * (m - 3))
    raise ValueError("ratio bound is defined for odd d >= 9 and even d >= 10")


@dataclass(frozen=True)
class MChernReport:
    """Invariant checks of an M-arrangement's log surface."""

    chern: ChernPair
    c2_expected: int
    c2_slack: int
    ratio: Fraction
    ratio_bound: Fraction
    ratio_slack: Fraction

    @property
    def passed(self) -> bool:
        return self.c2_slack == 0 and self.ratio_slack >= 0


def m_chern_invariant_check(wc: WeakCombinatorics) -> MChernReport | None:
    """For an M-arrangement of degree >= 9, check that c2 depends on the
    degree alone (m^2-2m odd, m^2-3m even) and that the ratio stays under
    the degree-wise bound.  Returns None when the preconditions fail."""
    try:
        if not is_m_arrangement(wc):
            return None
    except ValueError:
        return None
    if wc.d < 9 or wc.n(wc.d) > 0:
        return None
    m, odd = divmod(wc.d, 2)
    pair = chern_numbers(wc)
    expected = m * m - 2 * m if odd else m * m - 3 * m
    ratio = pair.ratio
    if ratio is None:
        return None
    bound = m_ratio_bound(wc.d)
    return MChernReport(
        chern=pair,
        c2_expected=expected,
        c2_slack=pair.c2 - expected,
        ratio=ratio,
        ratio_bound=bound,
        ratio_slack=bound - ratio,
    )
