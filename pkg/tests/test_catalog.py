import numpy as np
import pytest

from zeroschemes.catalog import exception_catalog, lookup, product_family_r
from zeroschemes.postulation import DEFECTIVE, defect_witness, evaluate, postulate, random_configuration
from zeroschemes.surfaces import Hirzebruch, LinearSystem, P1xP1, P2


def test_two_sporadic_plane_entries():
    plane = [c for c in exception_catalog() if c.surface == "P2"]
    assert [(c.params["d"], c.counts["double"]) for c in plane] == [(2, 2), (4, 5)]


def test_product_family_uses_2u_plus_1():
    assert product_family_r(1) == 3
    assert product_family_r(2) == 5
    for case in exception_catalog():
        if case.surface == "P1xP1":
            d, e = case.params["d"], case.params["e"]
            u = max(d, e) // 2
            assert case.counts == {"double": 2 * u + 1}


@pytest.mark.parametrize("case", exception_catalog(), ids=lambda c: f"{c.bundle()}:{c.counts}")
def test_each_witness_is_accepted(case):
    rng = np.random.default_rng(17)
    c = random_configuration(case.counts, rng)
    v = LinearSystem(case.bundle())
    assert defect_witness(v, c, case.witness(c))
    _, h0, _ = evaluate(v, c)
    assert h0 - max(0, v.dim - c.total_length) == case.predicted_defect


def test_lookup():
    assert lookup(P2(2), {"double": 2}) is not None
    assert lookup(P2(2), {"double": 2, "tile": 0}) is not None
    assert lookup(P2(2), {"double": 2, "tile": 1}) is None
    assert lookup(P1xP1(2, 2), {"double": 2}) is None


def test_hirzebruch_double_point_cell():
    rep = postulate(Hirzebruch(1, 2, 4), {"double": 4})
    assert (rep.h0, rep.expected_h0, rep.verdict) == (1, 0, DEFECTIVE)
    rep = postulate(Hirzebruch(1, 2, 4), {"square": 4})
    assert rep.h0 == 0
