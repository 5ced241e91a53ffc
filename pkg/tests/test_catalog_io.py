import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psisolv.catalog_io import (
    REPORT_COLUMNS,
    CatalogError,
    GroupDefError,
    ReportRow,
    build_group_defs,
    catalog,
    format_table_def,
    multiplier_action,
    parse_group_defs,
    report_rows,
    write_report,
)
from psisolv.criteria import Criterion, run_all
from psisolv.groups import GroupError, center, is_solvable, semidirect_product
from psisolv.metrics import order_spectrum, psi

F78_DOC = """\
# Z13 : Z6, the generator acting as x -> 4x
group Z13
kind cyclic
n 13
end

group Z6
kind cyclic
n 6
end

group F78
kind semidirect
normal Z13
acting Z6
actgens 1
act 1 0 4 8 12 3 7 11 2 6 10 1 5 9
end
"""


class TestParse:
    def test_single_cyclic(self):
        defs = parse_group_defs("group C6\nkind cyclic\nn 6\nend\n")
        assert [(d.name, d.kind, d.n) for d in defs] == [("C6", "cyclic", 6)]

    def test_action_row_is_multiplication_by_4(self):
        assert [4 * i % 13 for i in range(13)] == [0, 4, 8, 12, 3, 7, 11, 2, 6, 10, 1, 5, 9]

    def test_semidirect(self):
        built = build_group_defs(parse_group_defs(F78_DOC))
        G = built["F78"]
        assert G.order == 78 and G.name == "F78"
        direct = semidirect_product(built["Z13"], built["Z6"], multiplier_action(13, 4), [1])
        assert np.array_equal(G.table, direct.table)

    def test_actgens_optional(self):
        doc = F78_DOC.replace("actgens 1\n", "")
        assert build_group_defs(parse_group_defs(doc))["F78"].order == 78

    def test_perm_and_product(self):
        doc = """
group A5
kind perm
degree 5
gen 1 2 3 4 0
gen 1 2 0 3 4
end
group C2
kind cyclic
n 2
end
group P
kind product
factors C2 A5
end
"""
        built = build_group_defs(parse_group_defs(doc))
        assert built["A5"].order == 60 and psi(built["A5"]) == 211
        assert built["P"].order == 120 and not is_solvable(built["P"])

    def test_unresolved_reference(self):
        doc = "group P\nkind product\nfactors Zx Zx\nend\n"
        with pytest.raises(GroupDefError, match="unresolved") as exc:
            parse_group_defs(doc)
        assert (exc.value.line, exc.value.column) == (3, 9)

    def test_forward_reference_rejected(self):
        doc = "group P\nkind product\nfactors A A\nend\ngroup A\nkind cyclic\nn 2\nend\n"
        with pytest.raises(GroupDefError, match="unresolved"):
            parse_group_defs(doc)

    def test_duplicate_name(self):
        with pytest.raises(GroupDefError, match="duplicate") as exc:
            parse_group_defs("group A\nkind cyclic\nn 2\nend\ngroup A\nkind cyclic\nn 3\nend\n")
        assert exc.value.line == 5

    @pytest.mark.parametrize(
        "doc, message, line",
        [
            ("group A\nkind cyclic\nn x\nend\n", "integer", 3),
            ("group A\nkind wobble\nend\n", "kind", 2),
            ("group A\nkind cyclic\nend\n", "needs 'n'", 1),
            ("group A\nkind cyclic\nn 3\n", "missing 'end'", 3),
            ("kind cyclic\n", "outside", 1),
            ("group A\nkind cyclic\nkind cyclic\nn 2\nend\n", "twice", 3),
            ("group A\ncolour blue\nend\n", "unknown key", 2),
        ],
    )
    def test_syntax_errors_located(self, doc, message, line):
        with pytest.raises(GroupDefError, match=message) as exc:
            parse_group_defs(doc)
        assert exc.value.line == line

    def test_constructor_errors_located(self):
        doc = F78_DOC.replace("act 1 0 4 8", "act 1 0 4 4")
        with pytest.raises(GroupDefError, match="F78") as exc:
            build_group_defs(parse_group_defs(doc))
        assert exc.value.line == 12  # the block's 'group' line

    def test_bad_table(self):
        doc = "group T\nkind table\nrow 0 1\nrow 1 1\nend\n"
        with pytest.raises(GroupDefError, match="Latin"):
            build_group_defs(parse_group_defs(doc))

    def test_cap(self):
        with pytest.raises(GroupDefError, match="too large"):
            build_group_defs(parse_group_defs("group A\nkind cyclic\nn 50\nend\n"), cap=10)


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["trivial", "S3", "A5", "H1", "H2", "D7", "Z4xZ3xZ5"])
    def test_table_round_trip(self, groups, name):
        G = groups(name)
        back = build_group_defs(parse_group_defs(format_table_def(G)))[name]
        assert np.array_equal(back.table, G.table)


class TestCatalog:
    def test_a5(self):
        G = catalog("A5")
        assert G.order == 60 and dict(order_spectrum(G).counts) == {1: 1, 2: 15, 3: 20, 5: 24}

    def test_z60_both_ways(self):
        assert psi(catalog("Z60")) == psi(catalog("Z4xZ3xZ5")) == 1617

    @pytest.mark.parametrize("name", ["H1", "H2"])
    def test_case_study_groups(self, name):
        G = catalog(name)
        assert G.order == 156 and G.is_associative() and is_solvable(G)
        assert 549 < psi(G) < 1426

    def test_h1_structure(self):
        # Z2 x F78: the Z2 factor is central, F78 has trivial centre
        assert center(catalog("H1")).order == 2
        assert center(catalog("H2")).order == 1

    def test_symmetric_and_alternating(self):
        assert [catalog(f"S{n}").order for n in (1, 2, 3, 4, 5)] == [1, 2, 6, 24, 120]
        assert [catalog(f"A{n}").order for n in (3, 4, 5)] == [3, 12, 60]
        assert catalog("Z_7").order == 7

    def test_unknown(self):
        with pytest.raises(CatalogError):
            catalog("Q8x")

    def test_cap(self):
        with pytest.raises(GroupError):
            catalog("S8", cap=1000)


class TestReport:
    def test_empty(self):
        buf = io.StringIO()
        write_report([], buf)
        assert buf.getvalue() == "\t".join(REPORT_COLUMNS) + "\n"

    def test_a5_azad_khosravi_row(self, groups):
        report = run_all(groups("A5"))
        row = next(r for r in report_rows([report]) if r.criterion == "AzadKhosravi")
        assert row.cells() == [
            "A5", "60", "AzadKhosravi", "", "211/1", "211/1", "strictly_greater", "Inconclusive", "false", "true",
        ]

    def test_row_order(self, groups):
        reports = [run_all(groups("S3")), run_all(groups("A5"))]
        rows = report_rows(reports)
        assert [r.group for r in rows] == ["S3"] * 9 + ["A5"] * 9
        assert [r.criterion for r in rows[:9]] == [c.value for c in Criterion]

    def test_reduced_fractions(self):
        row = ReportRow("G", 1, "HLM2018", None, Fraction(6, 4), Fraction(-2, 4), "strictly_greater", "Inconclusive")
        assert row.cells()[4:6] == ["3/2", "-1/2"]

    def test_file_bytes_stable(self, groups, tmp_path):
        rows = report_rows([run_all(groups(n)) for n in ("A5", "H1", "Z60")])
        write_report(rows, tmp_path / "a.tsv")
        write_report(rows, tmp_path / "b.tsv")
        a = (tmp_path / "a.tsv").read_bytes()
        assert a == (tmp_path / "b.tsv").read_bytes()
        assert b"\r" not in a and a.endswith(b"\n")


_TOKENS = st.sampled_from(
    ["group", "end", "kind", "cyclic", "perm", "product", "semidirect", "table", "n", "degree", "gen",
     "factors", "normal", "acting", "actgens", "act", "row", "A", "B", "0", "1", "2", "3", "-1", "#", "x"]
)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.lists(_TOKENS, max_size=6).map(" ".join), max_size=14).map("\n".join))
def test_parsing_is_total(document):
    try:
        build_group_defs(parse_group_defs(document), cap=200)
    except GroupDefError as exc:
        assert exc.line >= 0


@settings(max_examples=100, deadline=None)
@given(st.text(max_size=200))
def test_parsing_arbitrary_text(document):
    try:
        build_group_defs(parse_group_defs(document), cap=200)
    except GroupDefError:
        pass
