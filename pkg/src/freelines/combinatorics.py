"""Weak combinatorics of line arrangements and the inequality filters on them.

The central object is the vector ``(d; n_2, n_3, ..., n_t)``: an arrangement
of ``d`` projective lines together with, for every multiplicity ``k >= 2``,
the number ``n_k`` of points where exactly ``k`` of the lines meet.  Counting
pairs of lines gives the consistency identity

    sum_{k>=2} C(k,2) * n_k  =  C(d,2),

and the total Tjurina number of the arrangement is

    tau  =  sum_{k>=2} (k-1)^2 * n_k.

Everything in this module is a pure, exact function of those integers:
Melchior's inequality for real non-pencil arrangements, Shnurnikov's
pseudoline inequality (two published constants), the degree bounds that
freeness forces when no point has multiplicity above four, and the
M-arrangement (maximal total Tjurina number) conditions.  All comparisons
are carried out in integer arithmetic; slacks are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping


class Status(str, Enum):
    """Outcome of a single inequality filter."""

    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"
    EXEMPT = "exempt"


class ShnurnikovMode(str, Enum):
    """Constant used on the right-hand side of Shnurnikov's inequality.

    STRICT9 is the published form ``n2 + (3/2) n3 >= 9 + (1/2) n4``; SCRIPT8
    is the weaker variant with constant 8 that circulates in enumeration
    scripts.  STRICT9 is the default for realizability verdicts.
    """

    STRICT9 = "strict-9"
    SCRIPT8 = "script-8"


@dataclass(frozen=True)
class WeakCombinatorics:
    """The vector ``(d; n_2, ..., n_t)`` of an arrangement of ``d`` lines.

    ``counts`` is stored canonically as a sorted tuple of ``(k, n_k)`` pairs
    with zero entries dropped; instances are immutable and hashable.
    """

    d: int
    counts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"line count must be a positive integer, got {self.d!r}")
        pairs = self.counts.items() if isinstance(self.counts, Mapping) else self.counts
        cleaned: dict[int, int] = {}
        for k, nk in pairs:
            if not isinstance(k, int) or k < 2:
                raise ValueError(f"multiplicity keys must be integers >= 2, got {k!r}")
            if not isinstance(nk, int) or nk < 0:
                raise ValueError(f"point counts must be non-negative integers, got n_{k} = {nk!r}")
            if nk == 0:
                continue
            if k > self.d:
                raise ValueError(f"n_{k} > 0 is impossible with only {self.d} lines")
            cleaned[k] = cleaned.get(k, 0) + nk
        object.__setattr__(self, "counts", tuple(sorted(cleaned.items())))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_counts(cls, d: int, counts: Mapping[int, int]) -> "WeakCombinatorics":
        return cls(d, tuple(counts.items()))

    @classmethod
    def quadruple(cls, d: int, n2: int, n3: int, n4: int) -> "WeakCombinatorics":
        """Build the common case ``(d; n2, n3, n4)``."""
        return cls(d, ((2, n2), (3, n3), (4, n4)))

    @classmethod
    def parse(cls, text: str, extra: Mapping[int, int] | None = None) -> "WeakCombinatorics":
        """Parse ``"d,n2,n3,n4"`` (trailing counts optional), e.g. ``"7,6,1,2"``."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or not all(parts):
            raise ValueError(f"cannot parse weak combinatorics from {text!r}")
        values = [int(p) for p in parts]
        if len(values) > 4:
            raise ValueError("use d,n2,n3,n4 plus explicit k=v pairs for higher multiplicities")
        d = values[0]
        counts = {k: v for k, v in zip((2, 3, 4), values[1:])}
        for k, v in (extra or {}).items():
            counts[k] = counts.get(k, 0) + v
        return cls.from_counts(d, counts)

    # -- primitive accessors ------------------------------------------------

    def n(self, k: int) -> int:
        """Number of k-fold points (0 for any k not stored, including k < 2)."""
        for key, value in self.counts:
            if key == k:
                return value
        return 0

    @property
    def n2(self) -> int:
        return self.n(2)

    @property
    def n3(self) -> int:
        return self.n(3)

    @property
    def n4(self) -> int:
        return self.n(4)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def triple(self) -> tuple[int, int, int]:
        """The ``(n2, n3, n4)`` part, for quadruple-bounded vectors."""
        return (self.n2, self.n3, self.n4)

    def max_multiplicity(self) -> int:
        """Largest k with n_k > 0, or 0 when there are no multiple points."""
        return self.counts[-1][0] if self.counts else 0

    def is_quadruple_bounded(self) -> bool:
        return self.max_multiplicity() <= 4

    def is_pencil(self) -> bool:
        """True iff all d lines pass through one point: n_d = 1, nothing else."""
        return self.counts == ((self.d, 1),)

    def pair_count(self) -> int:
        """The naive combinatorial count ``sum C(k,2) n_k``."""
        return sum(k * (k - 1) // 2 * nk for k, nk in self.counts)

    def is_consistent(self) -> bool:
        return self.pair_count() == self.d * (self.d - 1) // 2

    def total_tjurina(self) -> int:
        return sum((k - 1) ** 2 * nk for k, nk in self.counts)

    def sort_key(self) -> tuple[int, ...]:
        return (self.d,) + tuple(self.n(k) for k in range(2, self.d + 1))

    def label(self) -> str:
        top = max(4, self.max_multiplicity())
        body = ",".join(str(self.n(k)) for k in range(2, top + 1))
        return f"({self.d};{body})"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.label()


@dataclass(frozen=True)
class FilterVerdict:
    """Outcome of one filter: pass/fail carry the exact slack (LHS - RHS)."""

    filter: str
    status: Status
    slack: Fraction | None = None

    def __post_init__(self) -> None:
        has_slack = self.slack is not None
        if has_slack != (self.status in (Status.PASS, Status.FAIL)):
            raise ValueError("slack must be present exactly for pass/fail verdicts")
        if self.slack is not None:
            object.__setattr__(self, "slack", Fraction(self.slack))

    @property
    def ok(self) -> bool:
        """True unless the verdict is an outright failure."""
        return self.status is not Status.FAIL


def _verdict(name: str, slack: Fraction | int) -> FilterVerdict:
    slack = Fraction(slack)
    return FilterVerdict(name, Status.PASS if slack >= 0 else Status.FAIL, slack)


def _not_applicable(name: str) -> FilterVerdict:
    return FilterVerdict(name, Status.NOT_APPLICABLE)


# The one real arrangement known to violate Shnurnikov's inequality.
SHNURNIKOV_EXEMPT = (7, 9, 0, 2)


@dataclass(frozen=True)
class FilterConfig:
    """Which filters an enumeration run applies, and with which constants.

    ``search_caps`` are optional per-variable upper bounds ``{k: cap}`` on the
    n_k loops (script-compatibility mode caps every variable at 25; the
    default derives loop ranges from the naive count alone).
    """

    filters: tuple[str, ...] = ("prop-bounds", "melchior")
    include_shnurnikov: bool = False
    shnurnikov_mode: ShnurnikovMode = ShnurnikovMode.STRICT9
    include_freeness_integrality: bool = False
    search_caps: tuple[tuple[int, int], ...] | None = None
    name: str = "paper-table"

    def __post_init__(self) -> None:
        if self.search_caps is not None:
            caps = tuple(sorted(dict(self.search_caps).items()))
            if any(cap <= 0 for _, cap in caps):
                raise ValueError("search caps must be positive")
            object.__setattr__(self, "search_caps", caps)

    def caps(self) -> dict[int, int]:
        return dict(self.search_caps or ())

    @classmethod
    def paper_table(cls) -> "FilterConfig":
        """Default mode: naive count + degree bounds + Melchior, nothing else."""
        return cls()

    @classmethod
    def script_compat(cls, cond4: bool = False) -> "FilterConfig":
        """Reproduce the historical enumeration script: caps of 25 on every
        variable, and optionally its constant-8 Shnurnikov condition."""
        return cls(
            include_shnurnikov=cond4,
            shnurnikov_mode=ShnurnikovMode.SCRIPT8,
            search_caps=((2, 25), (3, 25), (4, 25)),
            name="script-compat+cond4" if cond4 else "script-compat",
        )

    @classmethod
    def strict(cls, mode: ShnurnikovMode = ShnurnikovMode.STRICT9) -> "FilterConfig":
        """Paper-table filters plus Shnurnikov as a realizability filter."""
        return cls(include_shnurnikov=True, shnurnikov_mode=mode, name="strict")


# ---------------------------------------------------------------------------
# formula operations
# ---------------------------------------------------------------------------


def consistent(wc: WeakCombinatorics) -> bool:
    """Does ``sum C(k,2) n_k`` equal ``C(d,2)``?"""
    return wc.is_consistent()


def total_tjurina(wc: WeakCombinatorics) -> int:
    """Total Tjurina number ``sum (k-1)^2 n_k`` (equal to the total Milnor
    number, every singular point being an ordinary multiple point)."""
    return wc.total_tjurina()


def melchior(wc: WeakCombinatorics) -> FilterVerdict:
    """Melchior's inequality ``n2 >= 3 + sum_{k>=4} (k-3) n_k``.

    Holds for every real arrangement of d >= 3 lines that is not a pencil;
    slack 0 characterizes simplicial arrangements.
    """
    if wc.d < 3 or wc.is_pencil():
        return _not_applicable("melchior")
    slack = wc.n2 - 3 - sum((k - 3) * nk for k, nk in wc.counts if k >= 4)
    return _verdict("melchior", slack)


def _shnurnikov_applicable(wc: WeakCombinatorics) -> bool:
    return wc.n(wc.d) == 0 and wc.n(wc.d - 1) == 0 and wc.n(wc.d - 2) == 0


def shnurnikov(wc: WeakCombinatorics, mode: ShnurnikovMode = ShnurnikovMode.STRICT9) -> FilterVerdict:
    """Shnurnikov's pseudoline inequality ``n2 + (3/2) n3 >= C + (1/2) n4``.

    Applicable only when the three top multiplicities are absent
    (n_d = n_{d-1} = n_{d-2} = 0); the single known violating arrangement
    (7; 9, 0, 2) is reported as exempt.  The comparison is done on the
    doubled inequality in integer arithmetic; the reported slack is the
    exact rational LHS - RHS of the original form.
    """
    name = f"shnurnikov-{mode.value}"
    if (wc.d, wc.n2, wc.n3, wc.n4) == SHNURNIKOV_EXEMPT and wc.max_multiplicity() <= 4:
        return FilterVerdict(name, Status.EXEMPT)
    if not _shnurnikov_applicable(wc):
        return _not_applicable(name)
    constant = 9 if mode is ShnurnikovMode.STRICT9 else 8
    doubled = 2 * wc.n2 + 3 * wc.n3 - 2 * constant - wc.n4
    return _verdict(name, Fraction(doubled, 2))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def prop_bounds(wc: WeakCombinatorics) -> tuple[FilterVerdict, FilterVerdict]:
    """Degree bounds forced by freeness with at most quadruple points:

        n2 + n3 <= floor((3d-3)/2)      and      n4 >= ceil((d^2-10d+9)/12),

    the lower bound clamped at 0.  Necessary conditions only.
    """
    if not wc.is_quadruple_bounded():
        raise ValueError("degree bounds require points of multiplicity at most 4")
    d = wc.d
    upper_cap = (3 * d - 3) // 2
    lower = max(0, _ceil_div(d * d - 10 * d + 9, 12))
    return (
        _verdict("prop-bounds-upper", upper_cap - (wc.n2 + wc.n3)),
        _verdict("prop-bounds-lower", wc.n4 - lower),
    )


def dimca_sernesi_max_degree(m: int) -> int | None:
    """Largest degree a free arrangement with maximal multiplicity ``m`` can
    have under the bound ``(d-1)/2 >= 2d/m - 2``, or None when the bound is
    vacuous (every degree is allowed, which happens exactly for m >= 4)."""
    if m < 2:
        raise ValueError("maximal multiplicity must be at least 2")
    if m >= 4:
        return None
    # m(d-1) >= 4d - 4m  <=>  d(4-m) <= 3m for m < 4
    return (3 * m) // (4 - m)


def m_target_tjurina(d: int) -> int:
    """Total Tjurina number an M-arrangement of degree ``d`` must attain:
    ``3m^2+1`` for d = 2m+1, ``3m^2-3m+3`` for d = 2m."""
    if d < 4:
        raise ValueError("M-arrangements are defined for degree >= 4")
    m, odd = divmod(d, 2)
    return 3 * m * m + 1 if odd else 3 * m * m - 3 * m + 3


def is_m_arrangement(wc: WeakCombinatorics) -> bool:
    """True iff the total Tjurina number attains the M-arrangement target for
    this degree.  Requires a consistent, quadruple-bounded vector."""
    if not wc.is_consistent():
        raise ValueError(f"{wc} is not consistent")
    if not wc.is_quadruple_bounded():
        raise ValueError(f"{wc} has points of multiplicity above 4")
    if wc.d < 4:
        return False
    return wc.total_tjurina() == m_target_tjurina(wc.d)


def m_bounds(wc: WeakCombinatorics) -> tuple[FilterVerdict, FilterVerdict]:
    """Sharper count bounds valid for M-arrangements:

        odd  d = 2m+1 >= 5:  n2+n3 <= 3m,              n4 >= ceil((3m^2-12m+1)/9)
        even d = 2m   >= 6:  n2+n3 <= floor((6m-3)/2), n4 >= ceil((m^2-5m+3)/3)

    with the lower bounds clamped at 0.  Not applicable off the M locus.
    """
    names = ("m-bounds-upper", "m-bounds-lower")
    try:
        applicable = is_m_arrangement(wc)
    except ValueError:
        applicable = False
    m, odd = divmod(wc.d, 2)
    if not applicable or wc.d < (5 if odd else 6):
        return (_not_applicable(names[0]), _not_applicable(names[1]))
    if odd:
        cap = 3 * m
        lower = max(0, _ceil_div(3 * m * m - 12 * m + 1, 9))
    else:
        cap = (6 * m - 3) // 2
        lower = max(0, _ceil_div(m * m - 5 * m + 3, 3))
    return (
        _verdict(names[0], cap - (wc.n2 + wc.n3)),
        _verdict(names[1], wc.n4 - lower),
    )
