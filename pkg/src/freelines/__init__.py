"""Exact tools for line arrangements with points of multiplicity at most four:
weak-combinatorics filters, freeness via Jacobian syzygies, enumeration of
admissible count vectors, combinatorial/pseudoline realizability searches,
and log-surface Chern invariants.  Everything is integer or rational
arithmetic; no floating point touches any verdict.
"""

from .combinatorics import (
    FilterConfig,
    FilterVerdict,
    ShnurnikovMode,
    Status,
    WeakCombinatorics,
    consistent,
    dimca_sernesi_max_degree,
    is_m_arrangement,
    m_bounds,
    m_target_tjurina,
    melchior,
    prop_bounds,
    shnurnikov,
    total_tjurina,
)
from .freeness import (
    ExponentPair,
    FreenessReport,
    FreenessVerdict,
    dpw_tau_max,
    freeness_compatible,
    freeness_roots,
)
from .geometry import (
    CatalogRecord,
    DuplicateLineError,
    IntersectionSummary,
    RationalArrangement,
    SimplicialVerdict,
    UnknownCatalogNameError,
    arrangement,
    catalog,
    catalog_names,
    format_arrangement,
    generic,
    intersection_summary,
    load_arrangement,
    near_pencil,
    parse_arrangement,
    pencil,
    simplicial_certificate,
    triangle,
)
from .syzygies import (
    FreenessCertificate,
    HomogeneousPolynomial,
    ResourceLimitError,
    SyzygySpace,
    defining_polynomial,
    is_free_exact,
    mdr,
    syzygy_space,
)
from .enumeration import (
    EnumerationResult,
    FilterReport,
    classify,
    enumerate_combinatorics,
    m_list,
    to_csv,
    to_json,
    to_markdown,
)
from .realizability import (
    PackingResult,
    PartialLinearSpace,
    SearchLimits,
    SearchOutcome,
    SearchStatus,
    WiringDiagram,
    packing_max,
    partial_linear_space_exists,
    validate_witness,
    wiring_search,
    witness_from_json,
    witness_to_json,
)
from .chern import ChernPair, MChernReport, chern_numbers, m_chern_invariant_check, m_ratio_bound

__version__ = "0.1.0"
