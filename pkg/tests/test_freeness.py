import math

import pytest
from hypothesis import given, strategies as st

from freelines import (
    FreenessVerdict,
    WeakCombinatorics,
    dpw_tau_max,
    freeness_compatible,
    freeness_roots,
)

from tables import TABLE_ROWS

WC = WeakCombinatorics.quadruple


class TestDpwTauMax:
    def test_examples(self):
        assert dpw_tau_max(19, 9) == 243  # 18*9 + 81, low-mdr regime
        assert dpw_tau_max(4, 1) == 7
        assert dpw_tau_max(4, 3) == 3  # 9 - C(4,2)

    def test_range_check(self):
        with pytest.raises(ValueError):
            dpw_tau_max(5, 5)
        with pytest.raises(ValueError):
            dpw_tau_max(5, -1)

    def test_regimes_agree_at_boundary(self):
        # the correction binomial vanishes when 2r - d + 2 <= 1
        for d in range(3, 20):
            for r in range(d):
                base = (d - 1) * (d - r - 1) + r * r
                t = 2 * r - d + 2
                expected = base - (math.comb(t, 2) if t >= 2 else 0)
                assert dpw_tau_max(d, r) == expected

    def test_decreasing_on_low_range(self):
        for d in range(4, 22):
            values = [dpw_tau_max(d, r) for r in range((d + 1) // 2)]
            assert values[0] == (d - 1) ** 2
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_correction_never_increases(self):
        for d in range(3, 20):
            for r in range(d):
                assert dpw_tau_max(d, r) <= (d - 1) * (d - r - 1) + r * r


class TestFreenessRoots:
    def test_examples(self):
        assert freeness_roots(5, 13) == (4, (1, 3))
        assert freeness_roots(8, 38) == (5, ())  # discriminant not a square
        assert freeness_roots(9, 49) == (4, (3, 5))

    def test_negative_discriminant(self):
        disc, roots = freeness_roots(9, 40)
        assert disc < 0 and roots == ()

    def test_root_symmetry(self):
        for d in range(3, 16):
            for tau in range(0, (d - 1) ** 2 + 1):
                _, roots = freeness_roots(d, tau)
                assert tuple(sorted(d - 1 - r for r in roots)) == roots

    def test_roots_solve_quadratic(self):
        for d in range(3, 16):
            for tau in range(0, (d - 1) ** 2 + 1):
                for r in freeness_roots(d, tau)[1]:
                    assert r * r - r * (d - 1) + (d - 1) ** 2 == tau


class TestFreenessCompatible:
    def test_examples(self):
        rep = freeness_compatible(WC(9, 6, 4, 3))
        assert rep.verdict is FreenessVerdict.COMPATIBLE
        assert rep.exponents == (3, 5)
        rep = freeness_compatible(WC(8, 7, 1, 3))
        assert rep.verdict is FreenessVerdict.NOT_COMPATIBLE
        assert rep.discriminant == 5
        rep = freeness_compatible(WC(18, 24, 1, 21))
        assert rep.exponents == (8, 9)

    def test_pencil(self):
        rep = freeness_compatible(WeakCombinatorics.from_counts(6, {6: 1}))
        assert rep.verdict is FreenessVerdict.TRIVIAL_PENCIL
        assert rep.exponents == (0, 5)

    def test_requires_consistency(self):
        with pytest.raises(ValueError):
            freeness_compatible(WC(5, 5, 0, 1))

    def test_case_b_roots_reported_but_not_compatible(self):
        rep = freeness_compatible(WC(5, 4, 0, 1))
        assert rep.integer_roots == (1, 3)  # 3 >= 5/2 is reported, not used
        assert rep.exponents == (1, 3)

    def test_exponent_identities_on_table(self):
        # exponents multiply to (d-1)^2 - tau and sum to d - 1
        for d, n2, n3, n4 in TABLE_ROWS:
            wc = WC(d, n2, n3, n4)
            rep = freeness_compatible(wc)
            if rep.exponents is None:
                continue
            d1, d2 = rep.exponents
            assert d1 + d2 == d - 1
            assert d1 * d2 == (d - 1) ** 2 - wc.total_tjurina()
            assert 2 * d1 < d

    def test_discriminant_formula_on_table(self):
        for d, n2, n3, n4 in TABLE_ROWS:
            rep = freeness_compatible(WC(d, n2, n3, n4))
            assert rep.discriminant == d * d + 2 * d - 3 - 4 * n2 - 8 * n3 - 12 * n4

    def test_incompatible_rows_have_nonsquare_discriminant(self):
        for d, n2, n3, n4 in TABLE_ROWS:
            rep = freeness_compatible(WC(d, n2, n3, n4))
            root = math.isqrt(max(rep.discriminant, 0))
            is_square = rep.discriminant >= 0 and root * root == rep.discriminant
            if rep.verdict is FreenessVerdict.NOT_COMPATIBLE:
                assert not (is_square and (d - 1 - root) % 2 == 0)
            else:
                assert is_square
