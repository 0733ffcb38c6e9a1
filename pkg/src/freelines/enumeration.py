"""Exhaustive enumeration of admissible weak combinatorics, and one-stop
classification reports.

``enumerate_combinatorics`` walks, for each degree, every consistent
``(d; n2, n3, n4)`` with points of multiplicity at most four - the inner
loops range over n4 and n3 only, the double count being forced by the naive
count - and keeps the vectors that pass the configured filters.  Pencils are
always skipped as trivial (they are free but carry no information).  The
default "paper-table" configuration applies the degree bounds and Melchior;
"script-compat" additionally caps every variable at 25, reproducing the
historical enumeration script including its de-facto degree-18 cutoff (the
uncapped pipeline still admits (19; 27, 0, 24)).

``m_list`` keeps the rows attaining the maximal total Tjurina number, and
``classify`` evaluates every filter, freeness compatibility, Chern data and
(on request) the realizability searches for a single vector.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .combinatorics import (
    FilterConfig,
    FilterVerdict,
    ShnurnikovMode,
    Status,
    WeakCombinatorics,
    is_m_arrangement,
    m_bounds,
    m_target_tjurina,
    melchior,
    prop_bounds,
    shnurnikov,
)
from .chern import ChernPair, chern_numbers, m_chern_invariant_check, MChernReport
from .freeness import FreenessReport, FreenessVerdict, freeness_compatible
from . import realizability as rz

#: Vectors whose (non-)realizability rests on an external matroid database
#: and is deliberately not recomputed here.
EXTERNAL_DATABASE_CASES = frozenset({(13, 15, 1, 10), (11, 10, 3, 6)})
OUT_OF_SCOPE_NOTE = "out of scope: external database"

SIMPLICIAL_REQUIRED = "simplicial-required"


@dataclass(frozen=True)
class FilterReport:
    """Everything known about one vector from counts alone."""

    wc: WeakCombinatorics
    verdicts: tuple[FilterVerdict, ...]
    freeness: FreenessReport | None = None
    chern: ChernPair | None = None
    m_chern: MChernReport | None = None
    flags: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    realizability: tuple[tuple[str, rz.SearchOutcome], ...] = ()

    def verdict(self, name: str) -> FilterVerdict:
        for v in self.verdicts:
            if v.filter == name:
                return v
        raise KeyError(name)

    @property
    def all_pass(self) -> bool:
        return all(v.ok for v in self.verdicts)


@dataclass(frozen=True)
class EnumerationResult:
    """Sorted rows surviving a filter configuration over a degree range."""

    d_range: tuple[int, int]
    config: FilterConfig
    rows: tuple[WeakCombinatorics, ...]
    reports: tuple[FilterReport, ...]

    def triples(self) -> dict[int, tuple[tuple[int, int, int], ...]]:
        out: dict[int, list[tuple[int, int, int]]] = {}
        for wc in self.rows:
            out.setdefault(wc.d, []).append(wc.triple())
        return {d: tuple(v) for d, v in out.items()}


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _passes_fast(d: int, n2: int, n3: int, n4: int, config: FilterConfig) -> bool:
    """Integer-only filter pipeline used inside the enumeration loops; must
    accept exactly the vectors whose verdict objects all pass (the oracle
    test in the suite pins this equivalence)."""
    caps = config.caps()
    if caps and (n2 > caps.get(2, n2) or n3 > caps.get(3, n3) or n4 > caps.get(4, n4)):
        return False
    # trivial pencils: (3; 0,1,0) and (4; 0,0,1) are the only quadruple cases
    if (d == 3 and (n2, n3, n4) == (0, 1, 0)) or (d == 4 and (n2, n3, n4) == (0, 0, 1)):
        return False
    if "prop-bounds" in config.filters:
        if n2 + n3 > (3 * d - 3) // 2:
            return False
        if n4 < max(0, _ceil_div(d * d - 10 * d + 9, 12)):
            return False
    if "melchior" in config.filters:
        if n2 < 3 + n4:
            return False
    if config.include_shnurnikov:
        applicable = all(nk == 0 for nk in _top_counts(d, n2, n3, n4))
        exempt = (d, n2, n3, n4) == (7, 9, 0, 2)
        if applicable and not exempt:
            constant = 9 if config.shnurnikov_mode is ShnurnikovMode.STRICT9 else 8
            if 2 * n2 + 3 * n3 < 2 * constant + n4:
                return False
    if config.include_freeness_integrality:
        tau = n2 + 4 * n3 + 9 * n4
        disc = 4 * tau - 3 * (d - 1) * (d - 1)
        if not _is_square(disc) or (d - 1 - isqrt(disc)) % 2 != 0:
            return False
    return True


def _top_counts(d: int, n2: int, n3: int, n4: int) -> tuple[int, ...]:
    """The counts n_d, n_{d-1}, n_{d-2} of a quadruple-bounded vector."""
    by_k = {2: n2, 3: n3, 4: n4}
    return tuple(by_k.get(k, 0) for k in (d, d - 1, d - 2))


def _verdicts_for(wc: WeakCombinatorics, config: FilterConfig) -> tuple[FilterVerdict, ...]:
    verdicts: list[FilterVerdict] = []
    for name in config.filters:
        if name == "prop-bounds":
            verdicts.extend(prop_bounds(wc))
        elif name == "melchior":
            verdicts.append(melchior(wc))
        else:
            raise ValueError(f"unknown filter {name!r}")
    if config.include_shnurnikov:
        verdicts.append(shnurnikov(wc, config.shnurnikov_mode))
    return tuple(verdicts)


def _enumerate_degree(d: int, config: FilterConfig) -> list[FilterReport]:
    pair_total = d * (d - 1) // 2
    rows: list[FilterReport] = []
    for n4 in range(pair_total // 6 + 1):
        remaining = pair_total - 6 * n4
        for n3 in range(remaining // 3 + 1):
            n2 = remaining - 3 * n3
            if not _passes_fast(d, n2, n3, n4, config):
                continue
            wc = WeakCombinatorics.quadruple(d, n2, n3, n4)
            report = FilterReport(wc, _verdicts_for(wc, config))
            rows.append(report)
    rows.sort(key=lambda rep: rep.wc.sort_key())
    return rows


def _parse_range(d_range: int | tuple[int, int]) -> tuple[int, int]:
    if isinstance(d_range, int):
        d_range = (d_range, d_range)
    lo, hi = d_range
    if lo > hi:
        raise ValueError(f"empty degree range {d_range}")
    if lo < 3 or hi > 25:
        raise ValueError("degree range must lie within [3, 25]")
    return (lo, hi)


def enumerate_combinatorics(
    d_range: int | tuple[int, int],
    config: FilterConfig | None = None,
    jobs: int = 1,
) -> EnumerationResult:
    """All consistent quadruple-bounded vectors over the degree range passing
    the enabled filters, sorted lexicographically by (d, n2, n3, n4).

    Results are identical for any ``jobs`` value: degrees are processed
    independently and merged in order.
    """
    lo, hi = _parse_range(d_range)
    config = config or FilterConfig.paper_table()
    degrees = range(lo, hi + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_degree = list(pool.map(lambda d: _enumerate_degree(d, config), degrees))
    else:
        per_degree = [_enumerate_degree(d, config) for d in degrees]
    reports = tuple(rep for batch in per_degree for rep in batch)
    return EnumerationResult((lo, hi), config, tuple(r.wc for r in reports), reports)


def m_list(
    d_range: int | tuple[int, int],
    config: FilterConfig | None = None,
    jobs: int = 1,
) -> EnumerationResult:
    """Rows of the enumeration attaining the maximal total Tjurina number
    for their degree, with the M-specific count bounds applied on top."""
    base = enumerate_combinatorics(d_range, config, jobs)
    reports = []
    for rep in base.reports:
        wc = rep.wc
        if wc.d < 4 or not is_m_arrangement(wc):
            continue
        upper, lower = m_bounds(wc)
        if not (upper.ok and lower.ok):
            continue
        reports.append(
            FilterReport(wc, rep.verdicts + (upper, lower), flags=rep.flags, notes=rep.notes)
        )
    return EnumerationResult(base.d_range, base.config, tuple(r.wc for r in reports), tuple(reports))


def classify(
    wc: WeakCombinatorics,
    include_realizability: bool = False,
    limits: rz.SearchLimits = rz.SearchLimits(),
) -> FilterReport:
    """Evaluate every filter and derived quantity for one vector.

    Always reports: consistency, the degree bounds, Melchior, Shnurnikov in
    both constants, the M-arrangement equality with its bounds, freeness
    compatibility, and Chern data when defined.  Melchior slack 0 raises the
    ``simplicial-required`` flag (a real realization would have to be
    simplicial).  The two vectors whose status rests on an external matroid
    database are annotated as out of scope.  With ``include_realizability``
    the partial-linear-space and wiring searches run under ``limits``.
    """
    verdicts: list[FilterVerdict] = []
    flags: list[str] = []
    notes: list[str] = []

    consistency_slack = Fraction(wc.pair_count() - wc.d * (wc.d - 1) // 2)
    verdicts.append(
        FilterVerdict("consistency", Status.PASS if consistency_slack == 0 else Status.FAIL, consistency_slack)
    )
    consistent_wc = consistency_slack == 0

    if wc.is_quadruple_bounded():
        verdicts.extend(prop_bounds(wc))
    mel = melchior(wc)
    verdicts.append(mel)
    verdicts.append(shnurnikov(wc, ShnurnikovMode.STRICT9))
    verdicts.append(shnurnikov(wc, ShnurnikovMode.SCRIPT8))

    if consistent_wc and wc.is_quadruple_bounded() and wc.d >= 4:
        tau = wc.total_tjurina()
        m_slack = Fraction(tau - m_target_tjurina(wc.d))
        verdicts.append(
            FilterVerdict("m-arrangement", Status.PASS if m_slack == 0 else Status.FAIL, m_slack)
        )
        verdicts.extend(m_bounds(wc))
    else:
        verdicts.append(FilterVerdict("m-arrangement", Status.NOT_APPLICABLE))

    freeness = freeness_compatible(wc) if consistent_wc else None

    chern: ChernPair | None = None
    m_chern: MChernReport | None = None
    if consistent_wc and wc.d >= 6 and wc.n(wc.d) == 0:
        chern = chern_numbers(wc)
        m_chern = m_chern_invariant_check(wc)

    if mel.slack == 0:
        flags.append(SIMPLICIAL_REQUIRED)
    if wc.is_quadruple_bounded() and (wc.d, wc.n2, wc.n3, wc.n4) in EXTERNAL_DATABASE_CASES:
        notes.append(OUT_OF_SCOPE_NOTE)

    searches: list[tuple[str, rz.SearchOutcome]] = []
    if include_realizability and consistent_wc and wc.is_quadruple_bounded():
        searches.append(("partial-linear-space", rz.partial_linear_space_exists(wc, limits)))
        if wc.d >= 3:
            searches.append(("wiring-diagram", rz.wiring_search(wc, limits)))

    return FilterReport(
        wc=wc,
        verdicts=tuple(verdicts),
        freeness=freeness,
        chern=chern,
        m_chern=m_chern,
        flags=tuple(flags),
        notes=tuple(notes),
        realizability=tuple(searches),
    )


# ---------------------------------------------------------------------------
# output formats (byte-stable: fixed ordering, no timestamps)
# ---------------------------------------------------------------------------


def to_csv(result: EnumerationResult) -> str:
    lines = ["d,n2,n3,n4"]
    lines.extend(f"{wc.d},{wc.n2},{wc.n3},{wc.n4}" for wc in result.rows)
    return "\n".join(lines) + "\n"


def _verdict_payload(verdict: FilterVerdict) -> dict:
    payload: dict = {"status": verdict.status.value}
    if verdict.slack is not None:
        payload["slack"] = str(verdict.slack)
    return payload


def _freeness_payload(report: FreenessReport) -> dict:
    return {
        "discriminant": report.discriminant,
        "integer_roots": list(report.integer_roots),
        "exponents": list(report.exponents) if report.exponents else None,
        "verdict": report.verdict.value,
    }


def report_payload(report: FilterReport) -> dict:
    """JSON-ready form of a classification report (documented schema)."""
    wc = report.wc
    payload: dict = {
        "wc": {"d": wc.d, **{f"n{k}": nk for k, nk in wc.counts}},
        "verdicts": {v.filter: _verdict_payload(v) for v in report.verdicts},
    }
    if report.freeness is not None:
        payload["freeness"] = _freeness_payload(report.freeness)
    if report.chern is not None:
        ratio = report.chern.ratio
        payload["chern"] = {
            "c1_sq": report.chern.c1_sq,
            "c2": report.chern.c2,
            "ratio": str(ratio) if ratio is not None else None,
        }
    if report.m_chern is not None:
        payload["m_chern"] = {
            "c2_expected": report.m_chern.c2_expected,
            "c2_slack": report.m_chern.c2_slack,
            "ratio_bound": str(report.m_chern.ratio_bound),
            "ratio_slack": str(report.m_chern.ratio_slack),
        }
    if report.flags:
        payload["flags"] = list(report.flags)
    if report.notes:
        payload["notes"] = list(report.notes)
    if report.realizability:
        payload["realizability"] = {
            name: {"status": outcome.status.value} for name, outcome in report.realizability
        }
    return payload


def to_json(result: EnumerationResult) -> str:
    rows = []
    for rep in result.reports:
        wc = rep.wc
        rows.append(
            {
                "d": wc.d,
                "n2": wc.n2,
                "n3": wc.n3,
                "n4": wc.n4,
                "verdicts": {v.filter: _verdict_payload(v) for v in rep.verdicts},
            }
        )
    return json.dumps(rows, indent=2) + "\n"


def to_markdown(result: EnumerationResult) -> str:
    headers = ("d", "n2", "n3", "n4")
    rows = [(str(wc.d), str(wc.n2), str(wc.n3), str(wc.n4)) for wc in result.rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]

    def fmt(cells: tuple[str, ...]) -> str:
        return "| " + " | ".join(c.rjust(w) for c, w in zip(cells, widths)) + " |"

    out = [fmt(headers), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    out.extend(fmt(r) for r in rows)
    return "\n".join(out) + "\n"
