from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freelines import (
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

WC = WeakCombinatorics.quadruple


@st.composite
def consistent_vectors(draw):
    """Consistent (d; n2, n3, n4): pick n4 and n3, solve for the doubles."""
    d = draw(st.integers(min_value=3, max_value=30))
    pairs = d * (d - 1) // 2
    n4 = draw(st.integers(min_value=0, max_value=pairs // 6))
    n3 = draw(st.integers(min_value=0, max_value=(pairs - 6 * n4) // 3))
    n2 = pairs - 6 * n4 - 3 * n3
    return WC(d, n2, n3, n4)


class TestWeakCombinatorics:
    def test_validation(self):
        with pytest.raises(ValueError):
            WeakCombinatorics(0)
        with pytest.raises(ValueError):
            WC(3, 0, 0, 1)  # n4 > 0 needs at least 4 lines
        with pytest.raises(ValueError):
            WC(5, -1, 0, 0)

    def test_zero_counts_dropped(self):
        assert WC(5, 4, 0, 1).counts == ((2, 4), (4, 1))
        assert WC(5, 4, 0, 1) == WeakCombinatorics.from_counts(5, {2: 4, 3: 0, 4: 1})

    def test_parse(self):
        assert WeakCombinatorics.parse("7,6,1,2") == WC(7, 6, 1, 2)
        assert WeakCombinatorics.parse("7,0,0,0", {7: 1}) == WeakCombinatorics.from_counts(7, {7: 1})
        with pytest.raises(ValueError):
            WeakCombinatorics.parse("7,6,1,2,0")

    def test_max_multiplicity_and_pencil(self):
        assert WC(5, 4, 0, 1).max_multiplicity() == 4
        assert WeakCombinatorics(1).max_multiplicity() == 0
        assert WeakCombinatorics.from_counts(6, {6: 1}).is_pencil()
        assert not WC(3, 3, 0, 0).is_pencil()
        assert WeakCombinatorics.from_counts(6, {6: 1}).is_quadruple_bounded() is False

    def test_consistency(self):
        assert consistent(WC(5, 4, 0, 1))  # 4 + 6 = 10
        assert consistent(WC(3, 3, 0, 0))
        assert not consistent(WC(5, 5, 0, 1))  # 11 != 10


class TestTotalTjurina:
    def test_quadruple_formula(self):
        assert total_tjurina(WC(9, 6, 4, 3)) == 49  # 6 + 16 + 27
        assert total_tjurina(WC(13, 12, 4, 9)) == 109

    def test_pencil(self):
        for d in range(2, 9):
            assert total_tjurina(WeakCombinatorics.from_counts(d, {d: 1})) == (d - 1) ** 2

    @given(consistent_vectors())
    def test_tjurina_pair_identity(self, wc):
        # d(d-1) - tau = n2 + 2 n3 + 3 n4 for consistent quadruple-bounded vectors
        lhs = wc.d * (wc.d - 1) - total_tjurina(wc)
        assert lhs == wc.n2 + 2 * wc.n3 + 3 * wc.n4


class TestMelchior:
    def test_simplicial_boundary(self):
        v = melchior(WC(5, 4, 0, 1))
        assert v.status is Status.PASS and v.slack == 0

    def test_dual_hesse_fails(self):
        v = melchior(WeakCombinatorics.from_counts(9, {3: 12}))
        assert v.status is Status.FAIL and v.slack == -3

    def test_degree_18_row(self):
        assert melchior(WC(18, 24, 1, 21)).slack == 0

    def test_not_applicable(self):
        assert melchior(WeakCombinatorics.from_counts(5, {5: 1})).status is Status.NOT_APPLICABLE
        assert melchior(WeakCombinatorics.from_counts(2, {2: 1})).status is Status.NOT_APPLICABLE

    def test_higher_multiplicities_enter(self):
        # a five-fold point contributes (5-3) = 2 to the right-hand side
        wc = WeakCombinatorics.from_counts(7, {2: 6, 5: 1, 3: 1})
        assert melchior(wc).slack == 6 - 3 - 2

    @given(consistent_vectors())
    def test_double_count_linearity(self, wc):
        # removing one double point lowers the slack by exactly 1
        if wc.n2 == 0 or wc.is_pencil():
            return
        shifted = WeakCombinatorics.from_counts(wc.d, {**wc.as_dict(), 2: wc.n2 - 1})
        if shifted.is_pencil():
            return
        assert melchior(wc).slack - melchior(shifted).slack == 1


class TestShnurnikov:
    def test_exempt_tuple(self):
        assert shnurnikov(WC(7, 9, 0, 2)).status is Status.EXEMPT
        assert shnurnikov(WC(7, 9, 0, 2), ShnurnikovMode.SCRIPT8).status is Status.EXEMPT

    def test_strict_failure(self):
        v = shnurnikov(WC(10, 9, 0, 6))
        assert v.status is Status.FAIL
        assert v.slack == Fraction(18 - 24, 2)

    def test_not_applicable_top_counts(self):
        assert shnurnikov(WC(6, 6, 1, 1)).status is Status.NOT_APPLICABLE  # n_{d-2} = n4 > 0
        assert shnurnikov(WC(5, 4, 0, 1)).status is Status.NOT_APPLICABLE  # n_{d-1} = n4 > 0
        assert shnurnikov(WC(4, 3, 1, 0)).status is Status.NOT_APPLICABLE  # n_{d-2} = n2 > 0

    def test_applicable_small_degree(self):
        # d = 6 with no quadruples satisfies the hypothesis n6 = n5 = n4 = 0
        v = shnurnikov(WC(6, 6, 3, 0))
        assert v.status is Status.PASS

    def test_script_mode_weaker(self):
        for row in [(10, 9, 0, 6), (12, 12, 0, 9), (9, 9, 1, 4), (13, 12, 4, 9), (15, 18, 1, 14)]:
            strict = shnurnikov(WC(*row), ShnurnikovMode.STRICT9)
            script = shnurnikov(WC(*row), ShnurnikovMode.SCRIPT8)
            if strict.status is Status.PASS:
                assert script.status is Status.PASS

    def test_slack_gap_is_one(self):
        strict = shnurnikov(WC(13, 12, 4, 9), ShnurnikovMode.STRICT9)
        script = shnurnikov(WC(13, 12, 4, 9), ShnurnikovMode.SCRIPT8)
        assert script.slack - strict.slack == 1


class TestPropBounds:
    def test_degree_18(self):
        upper, lower = prop_bounds(WC(18, 24, 1, 21))
        assert upper.status is Status.PASS and upper.slack == 0  # 25 <= 25
        assert lower.status is Status.PASS and lower.slack == 21 - 13

    def test_degree_7_lower_clamped(self):
        _, lower = prop_bounds(WC(7, 3, 6, 0))
        assert lower.status is Status.PASS and lower.slack == 0  # bound is max(0, -1)

    def test_rejects_higher_multiplicity(self):
        with pytest.raises(ValueError):
            prop_bounds(WeakCombinatorics.from_counts(6, {5: 1, 2: 5}))

    def test_lower_bound_sign(self):
        # ceil((d-1)(d-9)/12) clamps to 0 up to degree 9 and is positive after
        for d in range(3, 10):
            _, lower = prop_bounds(WeakCombinatorics.quadruple(d, 0, 0, 0))
            assert lower.slack == 0
        for d in range(10, 26):
            _, lower = prop_bounds(WeakCombinatorics.quadruple(d, 0, 0, 0))
            assert lower.status is Status.FAIL and lower.slack < 0


class TestDimcaSernesi:
    def test_known_values(self):
        assert dimca_sernesi_max_degree(3) == 9
        assert dimca_sernesi_max_degree(4) is None
        assert dimca_sernesi_max_degree(2) == 3

    def test_monotone_then_unbounded(self):
        assert dimca_sernesi_max_degree(2) <= dimca_sernesi_max_degree(3)
        for m in range(4, 12):
            assert dimca_sernesi_max_degree(m) is None
        with pytest.raises(ValueError):
            dimca_sernesi_max_degree(1)


class TestMArrangements:
    def test_targets(self):
        assert m_target_tjurina(9) == 49
        assert m_target_tjurina(10) == 63
        assert m_target_tjurina(4) == 9
        with pytest.raises(ValueError):
            m_target_tjurina(3)

    def test_membership(self):
        assert is_m_arrangement(WC(9, 6, 4, 3))
        assert not is_m_arrangement(WC(9, 6, 6, 2))  # tau = 48
        assert is_m_arrangement(WC(10, 9, 0, 6))
        assert is_m_arrangement(WeakCombinatorics.from_counts(21, {3: 28, 4: 21}))

    def test_preconditions(self):
        with pytest.raises(ValueError):
            is_m_arrangement(WC(9, 6, 6, 3))  # inconsistent

    def test_bounds(self):
        upper, lower = m_bounds(WC(9, 6, 4, 3))
        assert (upper.slack, lower.slack) == (12 - 10, 3 - 1)
        upper, lower = m_bounds(WC(10, 9, 0, 6))
        assert (upper.slack, lower.slack) == (13 - 9, 6 - 1)
        upper, lower = m_bounds(WC(5, 4, 0, 1))
        assert upper.status is Status.PASS and lower.slack == 1

    def test_bounds_not_applicable_off_m_locus(self):
        upper, lower = m_bounds(WC(9, 6, 6, 2))
        assert upper.status is Status.NOT_APPLICABLE
        assert lower.status is Status.NOT_APPLICABLE
