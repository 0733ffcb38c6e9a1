"""Exact intersection combinatorics of rational line arrangements.

Lines live in the projective plane and are stored as coefficient triples
``(a, b, c)`` of ``a x + b y + c z = 0``, canonicalized to coprime integers
whose first nonzero entry is positive.  All intersections are computed with
integer cross products, so the derived weak combinatorics is exact.

The module also ships a small catalog of named arrangements.  Families with
simple constructions (pencils, near-pencils, generic arrangements from conic
tangents) come with coordinates; classical arrangements whose coordinates
are not rational, or not recorded here, are combinatorics-only records.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import WeakCombinatorics, melchior


class DuplicateLineError(ValueError):
    """Two input lines canonicalize to the same projective line."""


class UnknownCatalogNameError(KeyError):
    """No catalog entry under the requested name."""


RationalTriple = tuple[int | Fraction | str, ...]
Triple = tuple[int, int, int]

REAL = "real"
COMPLEX_ONLY = "complex-only"


def canonical_triple(triple: Sequence[int | Fraction | str]) -> Triple:
    """Scale a rational triple to coprime integers, first nonzero positive."""
    if len(triple) != 3:
        raise ValueError(f"expected three homogeneous coordinates, got {triple!r}")
    fracs = [Fraction(v) for v in triple]
    if all(v == 0 for v in fracs):
        raise ValueError("the zero triple is not projective")
    scale = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * scale) for f in fracs]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return (ints[0], ints[1], ints[2])


def _cross(p: Triple, q: Triple) -> Triple:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


@dataclass(frozen=True)
class RationalArrangement:
    """A finite set of distinct rational projective lines."""

    lines: tuple[Triple, ...]
    name: str | None = None
    field_tag: str = REAL

    def __post_init__(self) -> None:
        canon = tuple(canonical_triple(line) for line in self.lines)
        seen: dict[Triple, int] = {}
        for idx, line in enumerate(canon):
            if line in seen:
                raise DuplicateLineError(
                    f"lines {seen[line]} and {idx} are the same projective line {line}"
                )
            seen[line] = idx
        if not canon:
            raise ValueError("an arrangement needs at least one line")
        if self.field_tag not in (REAL, COMPLEX_ONLY):
            raise ValueError(f"unknown field tag {self.field_tag!r}")
        object.__setattr__(self, "lines", canon)

    @property
    def d(self) -> int:
        return len(self.lines)


def arrangement(
    lines: Iterable[Sequence[int | Fraction | str]],
    name: str | None = None,
    field_tag: str = REAL,
) -> RationalArrangement:
    return RationalArrangement(tuple(tuple(line) for line in lines), name, field_tag)


@dataclass(frozen=True)
class IntersectionSummary:
    """All intersection points of an arrangement, with multiplicities."""

    points: tuple[tuple[Triple, int], ...]
    wc: WeakCombinatorics


def intersection_summary(arr: RationalArrangement) -> IntersectionSummary:
    """Group the pairwise intersections by canonical point.

    The multiplicity of a point is the number of lines through it; since
    every pair of distinct projective lines meets in exactly one point, the
    grouped multiplicities always satisfy ``sum C(m,2) = C(d,2)``.
    """
    lines = arr.lines
    incident: dict[Triple, set[int]] = {}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            point = canonical_triple(_cross(lines[i], lines[j]))
            incident.setdefault(point, set()).add(i)
            incident[point].add(j)
    points = tuple(sorted((pt, len(ids)) for pt, ids in incident.items()))
    tally: dict[int, int] = {}
    for _, mult in points:
        tally[mult] = tally.get(mult, 0) + 1
    pair_total = sum(m * (m - 1) // 2 for _, m in points)
    if pair_total != arr.d * (arr.d - 1) // 2:
        raise AssertionError("pair count mismatch: grouped intersections are inconsistent")
    return IntersectionSummary(points, WeakCombinatorics.from_counts(arr.d, tally))


class SimplicialVerdict(str, Enum):
    SIMPLICIAL = "simplicial"
    NON_SIMPLICIAL = "non-simplicial"
    NOT_APPLICABLE = "not-applicable"


def simplicial_certificate(arr: RationalArrangement) -> SimplicialVerdict:
    """Certify simpliciality through Melchior's equality case.

    A real non-pencil arrangement of at least three lines is simplicial
    iff its Melchior slack is exactly 0.  Pencils and complex-only records
    are out of range.
    """
    if arr.field_tag != REAL or arr.d < 3:
        return SimplicialVerdict.NOT_APPLICABLE
    verdict = melchior(intersection_summary(arr).wc)
    if verdict.slack is None:
        return SimplicialVerdict.NOT_APPLICABLE
    return SimplicialVerdict.SIMPLICIAL if verdict.slack == 0 else SimplicialVerdict.NON_SIMPLICIAL


# ---------------------------------------------------------------------------
# constructible families
# ---------------------------------------------------------------------------


def pencil(d: int) -> RationalArrangement:
    """d lines through (0:0:1): x, y, x+y, x+2y, ..."""
    if d < 1:
        raise ValueError("a pencil needs at least one line")
    lines: list[Triple] = [(1, 0, 0)]
    if d >= 2:
        lines.append((0, 1, 0))
    lines.extend((1, i, 0) for i in range(1, d - 1))
    return RationalArrangement(tuple(lines), name=f"pencil({d})")


def near_pencil(d: int) -> RationalArrangement:
    """d-1 concurrent lines plus one transversal: counts (d; d-1, 0, ..., 1)."""
    if d < 3:
        raise ValueError("a near-pencil needs at least three lines")
    lines = pencil(d - 1).lines + ((0, 0, 1),)
    return RationalArrangement(lines, name=f"near-pencil({d})")


def triangle() -> RationalArrangement:
    return RationalArrangement(((1, 0, 0), (0, 1, 0), (0, 0, 1)), name="triangle")


def generic(d: int) -> RationalArrangement:
    """d lines with double points only: tangents ``2i x - y - i^2 z`` of a
    conic at rational parameters i = 0..d-1 (no three tangents concur)."""
    if d < 1:
        raise ValueError("need at least one line")
    lines = tuple((2 * i, -1, -i * i) for i in range(d))
    return RationalArrangement(lines, name=f"generic({d})")


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRecord:
    """A named arrangement: coordinates when constructible, counts always."""

    name: str
    wc: WeakCombinatorics
    field_tag: str
    arrangement: RationalArrangement | None = None
    simplicial: bool | None = None
    defining_product: str | None = None
    notes: tuple[str, ...] = ()


_COMPLEX_11_PRODUCT = (
    "x*y*z*(x+y)*(x+z)*(y-z)*(x+(t+1)*y)*(x+(t+1)*z)*(y+(-t-1)*z)"
    "*(x+(t+1)*y-t*z)*(x+t*y+z)   with   t^2 + t + 1 = 0"
)


def _record_from_arrangement(arr: RationalArrangement, notes: tuple[str, ...] = ()) -> CatalogRecord:
    summary = intersection_summary(arr)
    cert = simplicial_certificate(arr)
    simplicial = None if cert is SimplicialVerdict.NOT_APPLICABLE else cert is SimplicialVerdict.SIMPLICIAL
    return CatalogRecord(
        name=arr.name or "unnamed",
        wc=summary.wc,
        field_tag=arr.field_tag,
        arrangement=arr,
        simplicial=simplicial,
        notes=notes,
    )


_STATIC_RECORDS = {
    "a-9-1": CatalogRecord(
        name="a-9-1",
        wc=WeakCombinatorics.quadruple(9, 6, 4, 3),
        field_tag=REAL,
        simplicial=True,
        notes=("classical simplicial arrangement A(9,1); combinatorics-only record, no coordinates stored",),
    ),
    "a-13-2": CatalogRecord(
        name="a-13-2",
        wc=WeakCombinatorics.quadruple(13, 12, 4, 9),
        field_tag=REAL,
        simplicial=True,
        notes=("classical simplicial arrangement A(13,2); combinatorics-only record, no coordinates stored",),
    ),
    "klein": CatalogRecord(
        name="klein",
        wc=WeakCombinatorics.from_counts(21, {3: 28, 4: 21}),
        field_tag=COMPLEX_ONLY,
        simplicial=None,
        notes=("Klein's 21-line arrangement; attains the maximal total Tjurina number for degree 21",),
    ),
    "dual-hesse": CatalogRecord(
        name="dual-hesse",
        wc=WeakCombinatorics.from_counts(9, {3: 12}),
        field_tag=COMPLEX_ONLY,
        simplicial=None,
        notes=("dual Hesse arrangement: 9 lines, 12 triple points, no doubles; fails Melchior, so not real",),
    ),
    "complex-11": CatalogRecord(
        name="complex-11",
        wc=WeakCombinatorics.quadruple(11, 10, 3, 6),
        field_tag=COMPLEX_ONLY,
        simplicial=None,
        defining_product=_COMPLEX_11_PRODUCT,
        notes=(
            "free 11-line arrangement defined over the Eisenstein numbers; "
            "not realizable over the reals",
        ),
    ),
}

_PARAM_RE = re.compile(r"^([a-z-]+)\((\d+)\)$")


def catalog_names() -> tuple[str, ...]:
    """Canonical catalog names; parametrized families take a degree argument."""
    return ("triangle", "pencil(d)", "near-pencil(d)", "generic(d)") + tuple(sorted(_STATIC_RECORDS))


def catalog(name: str) -> CatalogRecord:
    """Look up a named arrangement.

    Constructible families return full coordinates; classical entries whose
    coordinates are irrational or unrecorded return counts plus metadata.
    Accepts a few alias spellings, e.g. ``A(9,1)`` for ``a-9-1``.
    """
    key = name.strip().lower().replace("_", "-").replace(" ", "")
    key = key.replace("nearpencil", "near-pencil").replace("dualhesse", "dual-hesse")
    alias = re.fullmatch(r"a\((\d+),(\d+)\)", key)
    if alias:
        key = f"a-{alias.group(1)}-{alias.group(2)}"
    if key in _STATIC_RECORDS:
        return _STATIC_RECORDS[key]
    if key == "triangle":
        return _record_from_arrangement(triangle())
    match = _PARAM_RE.match(key)
    if match:
        family, d = match.group(1), int(match.group(2))
        try:
            if family == "pencil":
                arr = pencil(d)
                return CatalogRecord(
                    name=arr.name or key,
                    wc=WeakCombinatorics.from_counts(d, {d: 1} if d >= 2 else {}),
                    field_tag=REAL,
                    arrangement=arr,
                    simplicial=None,
                    notes=("trivially free with exponents (0, d-1)",),
                )
            if family == "near-pencil":
                return _record_from_arrangement(near_pencil(d))
            if family == "generic":
                return _record_from_arrangement(generic(d))
        except ValueError as exc:
            raise UnknownCatalogNameError(f"{name}: {exc}") from exc
    raise UnknownCatalogNameError(name)


# ---------------------------------------------------------------------------
# arrangement text format
# ---------------------------------------------------------------------------
#
#   # comments run to end of line
#   field: real
#   name: near-pencil(5)        (optional)
#   1 0 0
#   0 1 0
#   1/2 -1 0
#
# One projective line per row: three integers or rationals.


def parse_arrangement(text: str) -> RationalArrangement:
    field_tag = REAL
    name: str | None = None
    rows: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("field:"):
            field_tag = line.split(":", 1)[1].strip().lower()
            continue
        if lowered.startswith("name:"):
            name = line.split(":", 1)[1].strip()
            continue
        parts = tuple(line.split())
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected three coordinates, got {raw!r}")
        rows.append(parts)
    if not rows:
        raise ValueError("no lines found in arrangement file")
    return arrangement(rows, name=name, field_tag=field_tag)


def format_arrangement(arr: RationalArrangement) -> str:
    out = []
    if arr.name:
        out.append(f"name: {arr.name}")
    out.append(f"field: {arr.field_tag}")
    out.extend(" ".join(str(c) for c in line) for line in arr.lines)
    return "\n".join(out) + "\n"


def load_arrangement(path: str) -> RationalArrangement:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_arrangement(handle.read())
