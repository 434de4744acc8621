import pytest

from zeroschemes.postulation import CERTIFIED, DEFECTIVE
from zeroschemes.theorems import suites as S


def cells(rows, **kw):
    return [r for r in rows if all(r.cell.get(k) == v for k, v in kw.items())]


def test_cell_seed_deterministic_and_distinct():
    assert S.cell_seed(0, "tiles-p2", 3, 2) == S.cell_seed(0, "tiles-p2", 3, 2)
    assert S.cell_seed(0, "tiles-p2", 3, 2) != S.cell_seed(0, "tiles-p2", 2, 3)
    assert S.cell_seed(0, "tiles-p2", 3) != S.cell_seed(1, "tiles-p2", 3)
    assert S.cell_seed(0, "a", 1) != S.cell_seed(0, "b", 1)


def test_tiles_examples():
    rows = S.verify_tiles_p2(range(3, 7))
    (r,) = cells(rows, d=3, s=2)
    assert (r.report.h0, r.report.verdict) == (2, CERTIFIED)
    (r,) = cells(rows, d=3, s=3)
    assert r.report.h0 == 0
    (r,) = cells(rows, d=6, s=7)
    assert r.report.h0 == 0 and r.agrees


def test_fattiles_examples():
    rows = S.verify_fattiles_p2(range(1, 6))
    assert cells(rows, d=2, r=1, s=1)[0].report.h0 == 0
    (r,) = cells(rows, d=4, r=5, s=0)
    assert (r.report.verdict, r.report.h0, r.report.witness) == (DEFECTIVE, 1, "conic^2")
    assert cells(rows, d=4, r=1, s=3)[0].report.h0 == 0
    bad = sorted((r.cell["d"], r.cell["r"], r.cell["s"]) for r in rows if r.report.verdict == DEFECTIVE)
    assert bad == [(2, 2, 0), (4, 5, 0)]
    assert all(r.agrees for r in rows)


def test_p1p1_examples_and_family():
    rows = S.verify_p1p1(range(1, 5), range(1, 5))
    assert cells(rows, d=1, e=1, s=1)[0].report.h0 == 0
    fam = [r for r in cells(rows, d=2, e=2) if "candidate" in r.note]
    by_r = {r.cell["r"]: r.report for r in fam}
    assert by_r[3].verdict == DEFECTIVE and by_r[3].h0 == 1
    assert by_r[2].verdict == CERTIFIED and by_r[2].h0 == 3
    assert S.family_resolution(rows) == "2u+1"
    assert S.summary(rows)["p1p1"]["family_defective_r"] == "2u+1"
    assert all(r.agrees for r in rows)


def test_hirzebruch_examples():
    rows = S.verify_hirzebruch((1,), (2,), 4)
    (crit,) = [r for r in cells(rows, e=1, a=2, b=4, s=6) if r.note == "critical"]
    assert crit.report.h0 == 0
    (r,) = cells(rows, e=1, a=2, b=3, s=2)
    assert (r.report.h0, r.report.verdict) == (1, CERTIFIED)
    (r,) = cells(rows, e=1, a=2, b=4, r=4)
    assert r.report.verdict == DEFECTIVE
    assert all(r.agrees for r in rows)
    with pytest.raises(ValueError):
        S.verify_hirzebruch((1,), (1,), 2)


def test_hirzebruch_dimension_count():
    from zeroschemes.surfaces import Hirzebruch

    assert Hirzebruch(2, 2, 5).h0 == 12


def test_cone():
    rows = S.verify_cone((3,))
    assert [r.value for r in rows] == [2, 4, 4]
    assert all(r.agrees for r in rows)


def test_small_random_suites_agree():
    for rows in (S.verify_twosquare_lemma(30), S.verify_curvilinear(30), S.verify_divisor_points(30),
                 S.verify_corollary_mixed(30), S.corollary_d2_mixed_cells()):
        assert rows and all(r.agrees for r in rows)


def test_d2_mixed_cells_only_double_pair_defective():
    rows = S.corollary_d2_mixed_cells()
    defective = [r.config for r in rows if r.report.verdict == DEFECTIVE]
    assert defective == ["double=2"]


def test_summary_counts():
    rows = S.verify_tiles_p2(range(1, 4))
    s = S.summary(rows)["tiles-p2"]
    assert s["cells"] == len(rows) == s["agree"] == s["Certified"]
