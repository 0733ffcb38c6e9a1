import math

import pytest

from freelines import (
    FilterConfig,
    ShnurnikovMode,
    Status,
    WeakCombinatorics,
    classify,
    enumerate_combinatorics,
    m_list,
    to_csv,
    to_json,
    to_markdown,
)
from freelines.enumeration import (
    EXTERNAL_DATABASE_CASES,
    OUT_OF_SCOPE_NOTE,
    SIMPLICIAL_REQUIRED,
    report_payload,
)

from tables import ADMISSIBLE_TABLE, M_LIST, TABLE_ROWS

WC = WeakCombinatorics.quadruple


# --------------------------------------------------------------------------
# independent oracle: unpruned triple loop with inline filter arithmetic
# --------------------------------------------------------------------------


def oracle_rows(d: int, config: FilterConfig) -> list[tuple[int, int, int, int]]:
    pairs = d * (d - 1) // 2
    caps = config.caps()
    rows = []
    for n2 in range(pairs + 1):
        for n3 in range(pairs + 1):
            for n4 in range(pairs + 1):
                if n2 + 3 * n3 + 6 * n4 != pairs:
                    continue
                if n3 > 0 and d < 3 or n4 > 0 and d < 4:
                    continue
                # trivial pencil: the single point carries all the lines
                if (d == 3 and (n2, n3, n4) == (0, 1, 0)) or (
                    d == 4 and (n2, n3, n4) == (0, 0, 1)
                ):
                    continue
                if caps and (n2 > caps[2] or n3 > caps[3] or n4 > caps[4]):
                    continue
                if "prop-bounds" in config.filters:
                    if 2 * (n2 + n3) > 3 * d - 3:
                        continue
                    if 12 * n4 < d * d - 10 * d + 9:
                        continue
                if "melchior" in config.filters and n2 < 3 + n4:
                    continue
                if config.include_shnurnikov:
                    top = {d: 0, d - 1: 0, d - 2: 0}
                    for k, v in ((2, n2), (3, n3), (4, n4)):
                        if k in top:
                            top[k] = v
                    applicable = not any(top.values())
                    exempt = (d, n2, n3, n4) == (7, 9, 0, 2)
                    c = 9 if config.shnurnikov_mode is ShnurnikovMode.STRICT9 else 8
                    if applicable and not exempt and 2 * n2 + 3 * n3 < 2 * c + n4:
                        continue
                if config.include_freeness_integrality:
                    disc = 4 * (n2 + 4 * n3 + 9 * n4) - 3 * (d - 1) ** 2
                    if disc < 0:
                        continue
                    s = math.isqrt(disc)
                    if s * s != disc or (d - 1 - s) % 2 != 0:
                        continue
                rows.append((d, n2, n3, n4))
    return sorted(rows)


ALL_CONFIGS = [
    FilterConfig.paper_table(),
    FilterConfig.script_compat(cond4=False),
    FilterConfig.script_compat(cond4=True),
    FilterConfig.strict(ShnurnikovMode.STRICT9),
    FilterConfig.strict(ShnurnikovMode.SCRIPT8),
    FilterConfig(include_freeness_integrality=True, name="paper-table+integrality"),
    FilterConfig(filters=("melchior",), name="melchior-only"),
]


class TestOracleEquivalence:
    @pytest.mark.parametrize("config", ALL_CONFIGS, ids=lambda c: c.name)
    def test_matches_triple_loop(self, config):
        for d in range(3, 13):
            expected = oracle_rows(d, config)
            got = [(wc.d, *wc.triple()) for wc in enumerate_combinatorics(d, config).rows]
            assert got == expected, f"d={d} mode={config.name}"


class TestAdmissibleTable:
    def test_full_table(self):
        result = enumerate_combinatorics((3, 18))
        assert result.triples() == ADMISSIBLE_TABLE
        assert len(result.rows) == 53

    def test_rows_sorted_and_passing(self):
        result = enumerate_combinatorics((3, 18))
        keys = [wc.sort_key() for wc in result.rows]
        assert keys == sorted(keys)
        assert all(rep.all_pass for rep in result.reports)

    def test_degree_19_without_caps(self):
        result = enumerate_combinatorics(19)
        assert [(wc.d, *wc.triple()) for wc in result.rows] == [(19, 27, 0, 24)]

    def test_degree_19_script_compat_empty(self):
        assert enumerate_combinatorics(19, FilterConfig.script_compat()).rows == ()

    def test_nothing_beyond_19(self):
        assert enumerate_combinatorics((20, 25)).rows == ()

    def test_script_compat_reproduces_table(self):
        ours = enumerate_combinatorics((3, 18), FilterConfig.script_compat(cond4=False))
        assert ours.triples() == ADMISSIBLE_TABLE

    def test_cond4_would_delete_printed_rows(self):
        capped = enumerate_combinatorics((3, 18), FilterConfig.script_compat(cond4=True))
        missing = set(TABLE_ROWS) - {(wc.d, *wc.triple()) for wc in capped.rows}
        assert (7, 6, 1, 2) in missing
        assert (10, 9, 0, 6) in missing

    def test_jobs_do_not_change_output(self):
        solo = enumerate_combinatorics((3, 18), jobs=1)
        multi = enumerate_combinatorics((3, 18), jobs=4)
        assert solo.rows == multi.rows
        assert to_csv(solo) == to_csv(multi)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            enumerate_combinatorics((2, 5))
        with pytest.raises(ValueError):
            enumerate_combinatorics((3, 26))
        with pytest.raises(ValueError):
            enumerate_combinatorics((9, 4))


class TestMList:
    def test_exact_list(self):
        result = m_list((4, 18))
        assert [(wc.d, *wc.triple()) for wc in result.rows] == list(M_LIST)

    def test_degree_14_empty(self):
        assert m_list(14).rows == ()

    def test_degree_5(self):
        assert [wc.triple() for wc in m_list(5).rows] == [(4, 0, 1)]

    def test_subset_of_enumeration(self):
        full = set(enumerate_combinatorics((4, 18)).rows)
        assert set(m_list((4, 18)).rows) <= full


class TestClassify:
    def test_simplicial_required_flag(self):
        report = classify(WC(17, 22, 0, 19))
        assert SIMPLICIAL_REQUIRED in report.flags
        assert report.verdict("melchior").slack == 0

    def test_strict_shnurnikov_failure(self):
        report = classify(WC(12, 12, 0, 9))
        assert report.verdict("shnurnikov-strict-9").status is Status.FAIL
        assert report.verdict("shnurnikov-script-8").status is Status.FAIL

    def test_freeness_section(self):
        report = classify(WC(8, 7, 1, 3))
        assert report.freeness is not None
        assert report.freeness.discriminant == 5
        assert report.freeness.verdict.value == "not-compatible"

    def test_out_of_scope_notes(self):
        for row in EXTERNAL_DATABASE_CASES:
            report = classify(WC(*row))
            assert OUT_OF_SCOPE_NOTE in report.notes
        assert classify(WC(9, 6, 4, 3)).notes == ()

    def test_chern_section(self):
        report = classify(WC(13, 12, 4, 9))
        assert report.chern is not None and report.chern.c1_sq == 60
        assert report.m_chern is not None and report.m_chern.c2_slack == 0
        assert classify(WC(5, 4, 0, 1)).chern is None

    def test_m_verdict(self):
        assert classify(WC(9, 6, 4, 3)).verdict("m-arrangement").status is Status.PASS
        assert classify(WC(9, 6, 6, 2)).verdict("m-arrangement").status is Status.FAIL

    def test_inconsistent_vector(self):
        report = classify(WC(5, 5, 0, 1))
        assert report.verdict("consistency").status is Status.FAIL
        assert report.freeness is None

    def test_with_realizability(self):
        report = classify(WC(5, 4, 0, 1), include_realizability=True)
        outcomes = dict(report.realizability)
        assert outcomes["partial-linear-space"].status.value == "witness-found"
        assert outcomes["wiring-diagram"].status.value == "witness-found"

    def test_payload_shape(self):
        payload = report_payload(classify(WC(17, 22, 0, 19)))
        assert payload["wc"] == {"d": 17, "n2": 22, "n4": 19}
        assert payload["verdicts"]["melchior"]["slack"] == "0"
        assert payload["flags"] == [SIMPLICIAL_REQUIRED]


class TestOutputFormats:
    def test_csv(self):
        result = enumerate_combinatorics((3, 4))
        assert to_csv(result) == "d,n2,n3,n4\n3,3,0,0\n4,3,1,0\n"

    def test_json_parses_and_is_stable(self):
        import json

        result = enumerate_combinatorics((3, 7))
        text = to_json(result)
        rows = json.loads(text)
        assert len(rows) == 10
        assert rows[0]["d"] == 3 and rows[0]["verdicts"]["melchior"]["status"] == "pass"
        assert text == to_json(enumerate_combinatorics((3, 7)))

    def test_markdown_alignment(self):
        text = to_markdown(enumerate_combinatorics((3, 5)))
        lines = text.splitlines()
        assert lines[0].startswith("|") and len({len(l) for l in lines}) == 1
