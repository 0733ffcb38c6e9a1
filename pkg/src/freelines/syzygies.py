"""Exact computation of the minimal degree of Jacobian relations (mdr) and
of freeness for explicit rational line arrangements.

For ``f`` the product of the defining linear forms, the degree-``r`` piece of
the syzygy module ``{(a,b,c) : a f_x + b f_y + c f_z = 0}`` is the kernel of
an integer matrix: rows are indexed by monomials of degree ``r + deg f - 1``,
columns by the ``3 * C(r+2, 2)`` unknown coefficients of ``(a, b, c)``.  Ranks
are computed by fraction-free (Bareiss) elimination over the integers and
kernel bases by rational Gaussian elimination; no floating point is involved
anywhere, because freeness is decided by exact equalities on the boundary.

Freeness itself follows the du Plessis-Wall criterion: with ``r = mdr(f)``
and ``tau`` the total Tjurina number computed from the intersection points,
the arrangement is free iff ``r < d/2`` and ``tau = (d-1)(d-r-1) + r^2``.
When ``r >= d/2`` the arrangement is never free, since the exponents of a
free curve satisfy ``d1 = mdr <= d2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from .combinatorics import WeakCombinatorics
from .freeness import ExponentPair, dpw_tau_max
from .geometry import RationalArrangement, arrangement, intersection_summary

Exponent = tuple[int, int, int]


class ResourceLimitError(RuntimeError):
    """The elimination matrix would exceed the configured size cap."""


#: Default cap on either matrix dimension; covers arrangements of up to 16
#: lines at every syzygy degree.  Pass ``max_side=None`` to lift it.
DEFAULT_MAX_SIDE = 512


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[Exponent, ...]:
    """Exponent triples of total degree ``degree``, in lexicographic order
    with x > y > z."""
    return tuple(
        (a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    )


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """A homogeneous polynomial in x, y, z with exact rational coefficients.

    ``coefficients`` maps exponent triples (summing to ``degree``) to nonzero
    values; the zero polynomial keeps an empty map.
    """

    degree: int
    coefficients: tuple[tuple[Exponent, Fraction], ...]

    def __post_init__(self) -> None:
        pairs = dict(self.coefficients)
        cleaned = {}
        for expo, coeff in pairs.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(expo) != 3 or any(e < 0 for e in expo) or sum(expo) != self.degree:
                raise ValueError(f"exponent {expo} does not have total degree {self.degree}")
            cleaned[expo] = coeff
        object.__setattr__(self, "coefficients", tuple(sorted(cleaned.items())))

    @classmethod
    def from_dict(cls, degree: int, coeffs: dict[Exponent, Fraction | int]) -> "HomogeneousPolynomial":
        return cls(degree, tuple((e, Fraction(c)) for e, c in coeffs.items()))

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, expo: Exponent) -> Fraction:
        return dict(self.coefficients).get(expo, Fraction(0))

    def __mul__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.coefficients:
            for e2, c2 in other.coefficients:
                key = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return HomogeneousPolynomial.from_dict(self.degree + other.degree, out)

    def partial(self, axis: int) -> "HomogeneousPolynomial":
        """Partial derivative with respect to x (0), y (1) or z (2)."""
        out: dict[Exponent, Fraction] = {}
        for expo, coeff in self.coefficients:
            if expo[axis] == 0:
                continue
            reduced = list(expo)
            reduced[axis] -= 1
            out[tuple(reduced)] = coeff * expo[axis]
        return HomogeneousPolynomial.from_dict(max(self.degree - 1, 0), out)

    def primitive(self) -> "HomogeneousPolynomial":
        """Clear denominators and content; leading (lex-first) coefficient positive."""
        if self.is_zero():
            return self
        denom = lcm(*(c.denominator for _, c in self.coefficients))
        ints = [c * denom for _, c in self.coefficients]
        g = gcd(*(int(v) for v in ints))
        scale = Fraction(denom, g)
        lead_expo = max(e for e, _ in self.coefficients)
        if self.coefficient(lead_expo) < 0:
            scale = -scale
        return HomogeneousPolynomial.from_dict(
            self.degree, {e: c * scale for e, c in self.coefficients}
        )


def linear_form(triple: Sequence[int | Fraction]) -> HomogeneousPolynomial:
    a, b, c = triple
    return HomogeneousPolynomial.from_dict(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def defining_polynomial(lines: RationalArrangement | Iterable[Sequence[int | Fraction]]) -> HomogeneousPolynomial:
    """Product of the defining linear forms, normalized to coprime integer
    coefficients.  Proportional input lines raise ``DuplicateLineError``."""
    if not isinstance(lines, RationalArrangement):
        lines = arrangement(lines)
    product = linear_form(lines.lines[0])
    for triple in lines.lines[1:]:
        product = product * linear_form(triple)
    return product.primitive()


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------


def integer_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    m = [row[:] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, n_rows):
            factor = m[r][col]
            row = m[r]
            top = m[rank]
            for c in range(col, n_cols):
                row[c] = (pivot * row[c] - factor * top[c]) // prev
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def rational_nullspace(rows: list[list[int]], n_cols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, via rational reduced row echelon form."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * p for v, p in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row_idx, pivot_col in enumerate(pivots):
            vec[pivot_col] = -m[row_idx][free]
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# syzygy spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SyzygySpace:
    """The degree-``r`` graded piece of the Jacobian syzygy module."""

    r: int
    dimension: int
    basis: tuple[tuple[HomogeneousPolynomial, HomogeneousPolynomial, HomogeneousPolynomial], ...] | None = None


def _syzygy_matrix(f: HomogeneousPolynomial, r: int) -> tuple[list[list[int]], int]:
    partials = [f.partial(axis).as_dict() for axis in range(3)]
    cols_mono = monomials(r)
    rows_mono = monomials(r + f.degree - 1)
    row_index = {expo: i for i, expo in enumerate(rows_mono)}
    n_cols = 3 * len(cols_mono)
    # column-major build, then transpose: each column is m * f_axis
    matrix = [[0] * n_cols for _ in rows_mono]
    col = 0
    for axis in range(3):
        part = partials[axis]
        for mono in cols_mono:
            for expo, coeff in part.items():
                key = (expo[0] + mono[0], expo[1] + mono[1], expo[2] + mono[2])
                matrix[row_index[key]][col] = int(coeff)
            col += 1
    return matrix, n_cols


def _check_cap(f: HomogeneousPolynomial, r: int, max_side: int | None) -> None:
    n_rows = (r + f.degree + 1) * (r + f.degree) // 2
    n_cols = 3 * (r + 2) * (r + 1) // 2
    if max_side is not None and max(n_rows, n_cols) > max_side:
        raise ResourceLimitError(
            f"syzygy matrix {n_rows}x{n_cols} exceeds the cap {max_side}; "
            "pass max_side=None to lift it"
        )


def syzygy_space(
    f: HomogeneousPolynomial,
    r: int,
    with_basis: bool = False,
    max_side: int | None = DEFAULT_MAX_SIDE,
) -> SyzygySpace:
    """Dimension (and optionally a basis) of the syzygies of degree ``r``.

    The defining polynomial must have integer coefficients (use
    ``primitive()``); intended for reduced products of distinct linear forms.
    """
    if r < 0:
        raise ValueError("syzygy degree must be non-negative")
    if f.degree < 1 or f.is_zero():
        raise ValueError("need a nonzero polynomial of positive degree")
    _check_cap(f, r, max_side)
    f = f.primitive()
    matrix, n_cols = _syzygy_matrix(f, r)
    if with_basis:
        kernel = rational_nullspace(matrix, n_cols)
        cols_mono = monomials(r)
        width = len(cols_mono)
        basis = []
        for vec in kernel:
            triple = []
            for axis in range(3):
                coeffs = {
                    mono: vec[axis * width + i]
                    for i, mono in enumerate(cols_mono)
                    if vec[axis * width + i] != 0
                }
                triple.append(HomogeneousPolynomial.from_dict(r, coeffs))
            basis.append(tuple(triple))
        return SyzygySpace(r, len(kernel), tuple(basis))
    dimension = n_cols - integer_rank(matrix)
    return SyzygySpace(r, dimension)


def mdr(f: HomogeneousPolynomial, max_side: int | None = DEFAULT_MAX_SIDE) -> int:
    """Minimal degree of a nontrivial Jacobian relation.

    For a product of d >= 2 distinct linear forms the answer always lies in
    [0, d-1] (the Koszul relations appear in degree d-1 at the latest); 0
    happens exactly for pencils.
    """
    if f.degree < 2:
        raise ValueError("mdr needs degree at least 2")
    for r in range(f.degree):
        if syzygy_space(f, r, max_side=max_side).dimension > 0:
            return r
    raise AssertionError("no Jacobian relation found below the degree; input was not reduced?")


@dataclass(frozen=True)
class FreenessCertificate:
    """Result of the exact freeness test for an explicit arrangement."""

    free: bool
    exponents: ExponentPair | None
    mdr: int
    tjurina: int
    wc: WeakCombinatorics
    note: str = ""


def is_free_exact(
    lines: RationalArrangement | Iterable[Sequence[int | Fraction]],
    max_side: int | None = DEFAULT_MAX_SIDE,
) -> FreenessCertificate:
    """Decide freeness of an explicit arrangement from its equations.

    Computes ``r = mdr(f)`` by exact elimination and ``tau`` from the actual
    intersection points, then applies the du Plessis-Wall equality test.
    """
    if not isinstance(lines, RationalArrangement):
        lines = arrangement(lines)
    d = lines.d
    if d < 2:
        raise ValueError("freeness test needs at least two lines")
    f = defining_polynomial(lines)
    r = mdr(f, max_side=max_side)
    wc = intersection_summary(lines).wc
    tau = wc.total_tjurina()
    if 2 * r >= d:
        return FreenessCertificate(
            False,
            None,
            r,
            tau,
            wc,
            note=(
                "mdr >= d/2: not free by definition (free exponents satisfy "
                "d1 = mdr <= d2), the ceiling equality being inconclusive there"
            ),
        )
    free = tau == dpw_tau_max(d, r)
    exponents = ExponentPair(r, d - 1 - r) if free else None
    return FreenessCertificate(free, exponents, r, tau, wc)
