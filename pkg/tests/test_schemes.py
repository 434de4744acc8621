import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import P, evaluation_matrix, monomials, rank_mod, trace_length
from zeroschemes import exactla
from zeroschemes.schemes import (
    Configuration,
    DiffOp,
    SchemeError,
    classify,
    curvilinear,
    fat,
    hilbert_function,
    is_dual_closed,
    jet,
    make_scheme,
    point,
    random_frame,
    random_scheme,
    residuate,
    scheme_from_record,
    scheme_to_record,
    tile,
    two_square,
)

TAGS = ["point", "double", "fat3", "fat4", "fat5", "fat6", "jet2", "jet3", "jet4", "curv3", "curv4", "square", "tile"]
LENGTHS = {"point": 1, "double": 3, "fat3": 6, "fat4": 10, "fat5": 15, "fat6": 21, "jet2": 2, "jet3": 3,
           "jet4": 4, "curv3": 3, "curv4": 4, "square": 4, "tile": 4}

schemes = st.tuples(st.sampled_from(TAGS), st.integers(0, 2**32)).map(
    lambda a: random_scheme(a[0], np.random.default_rng(a[1]))
)


def ops(z):
    return sorted(tuple(sorted(op.as_dict().items())) for op in z.dual)


def through(z, rng):
    """A random line through the support of ``z``."""
    a, b = exactla.random_fp(rng, 2)
    x, y = z.support
    return a, b, (-(a * x + b * y)) % P


def test_two_square_identity_frame():
    z = make_scheme(two_square(), (0, 0))
    assert ops(z) == sorted([((( 0, 0), 1),), (((1, 0), 1),), (((0, 1), 1),), (((1, 1), 1),)])
    assert len(z) == 4


def test_tile_identity_frame():
    z = make_scheme(tile(), (0, 0))
    assert ops(z) == sorted([(((0, 0), 1),), (((1, 0), 1),), (((0, 1), 1),), (((2, 0), 1),)])


def test_flat_curvilinear_is_a_jet():
    assert ops(make_scheme(curvilinear(4), (3, 4))) == ops(make_scheme(jet(4), (3, 4)))


@pytest.mark.parametrize("tag", TAGS)
def test_lengths(tag):
    z = random_scheme(tag, np.random.default_rng(1))
    assert len(z) == z.length == LENGTHS[tag]


def test_curvilinear_formula():
    c2, c3 = 5, 7
    z = make_scheme(curvilinear(4, (1, 0, 0, 1), c2, c3), (0, 0))
    assert z.dual[2].as_dict() == {(2, 0): 1, (0, 1): 2 * c2}
    assert z.dual[3].as_dict() == {(3, 0): 1, (1, 1): 6 * c2, (0, 1): 6 * c3}


def test_bad_kinds_rejected():
    with pytest.raises(SchemeError):
        make_scheme(tile((1, 2, 2, 4)), (0, 0))
    with pytest.raises(SchemeError):
        make_scheme(jet(5), (0, 0))
    with pytest.raises(SchemeError):
        make_scheme(fat(7), (0, 0))
    with pytest.raises(SchemeError):
        DiffOp.monomial(6, 0)


def test_support_collision():
    z = make_scheme(point(), (1, 2))
    with pytest.raises(SchemeError):
        Configuration((z, make_scheme(fat(2), (1, 2))))


@given(schemes)
def test_dual_closed(z):
    assert is_dual_closed(z)
    assert exactla.rank(exactla.as_matrix([op.vector() for op in z.dual])) == len(z)


@given(schemes)
def test_annihilator_is_an_ideal(z):
    # kernel of evaluation on polynomials of degree <= 5 is stable under x and y
    mons = monomials(5)
    rows = evaluation_matrix(z, [{m: 1} for m in mons])
    assert rank_mod(rows) == len(z)
    k = exactla.kernel_basis(exactla.as_matrix(rows, len(mons)))
    for vec in k[:4]:
        f = {m: int(c) for m, c in zip(mons, vec) if int(c)}
        for shift in ((1, 0), (0, 1)):
            g = {(i + shift[0], j + shift[1]): c for (i, j), c in f.items()}
            assert all(v == 0 for v in (r[0] for r in evaluation_matrix(z, [g])))


@given(schemes, st.integers(0, 2**32))
def test_residuation_length_identity(z, seed):
    g = through(z, np.random.default_rng(seed))
    t, res = residuate(z, g)
    assert t + (0 if res is None else len(res)) == len(z)
    assert t == trace_length(z, g)
    if res is not None:
        assert is_dual_closed(res)


def test_residual_examples():
    t = make_scheme(tile(), (0, 0))
    tr, res = residuate(t, (0, 1, 0))
    assert tr == 3 and res.kind.label == "point"
    tr, res = residuate(t, (1, 0, 0))
    assert tr == 2 and res.kind.label == "jet2"
    assert ops(res) == sorted([(((0, 0), 1),), (((1, 0), 1),)])
    tr, res = residuate(make_scheme(two_square(), (0, 0)), (0, 1, 0))
    assert tr == 2 and ops(res) == sorted([(((0, 0), 1),), (((1, 0), 1),)])
    tr, res = residuate(make_scheme(fat(2), (0, 0)), (0, 1, 0))
    assert tr == 2 and res.kind.label == "point"


def test_line_missing_support():
    z = make_scheme(tile(), (5, 5))
    assert residuate(z, (0, 1, 0)) == (0, z)
    with pytest.raises(SchemeError):
        residuate(z, (0, 0, 1))


@given(st.integers(0, 2**32))
def test_tile_trace_three_only_on_long_side(seed):
    rng = np.random.default_rng(seed)
    z = random_scheme("tile", rng)
    f11, _, f21, _ = z.kind.frame
    x, y = z.support
    # long side tangent to u = (f11, f21): equation f21*x - f11*y = const
    long_side = (f21, -f11 % P, (-(f21 * x - f11 * y)) % P)
    assert residuate(z, long_side)[0] == 3
    assert residuate(z, through(z, rng))[0] == 2


@given(st.integers(0, 2**32))
def test_two_square_trace_always_two(seed):
    rng = np.random.default_rng(seed)
    z = random_scheme("square", rng)
    f11, f12, f21, f22 = z.kind.frame
    x, y = z.support
    for a, b in ((f21, -f11), (f22, -f12), tuple(exactla.random_fp(rng, 2))):
        assert residuate(z, (a % P, b % P, (-(a * x + b * y)) % P))[0] == 2


@given(st.integers(0, 2**32))
def test_tile_twice_along_a_ruling(seed):
    rng = np.random.default_rng(seed)
    z = random_scheme("tile", rng)
    g = (1, 0, (-z.support[0]) % P)  # the ruling x = const
    t1, r1 = residuate(z, g)
    assert (t1, len(r1)) == (2, 2) and r1.kind.label == "jet2"
    t2, r2 = residuate(r1, g)
    assert (t2, len(r2)) == (1, 1) and r2.kind.label == "point"


@pytest.mark.parametrize("tag,want", [
    ("point", "point"), ("double", "double"), ("fat3", "fat3"), ("jet2", "jet2"),
    # isomorphism type only: a straight 3-jet is abstractly k[t]/t^3
    ("jet3", "curv3"),
    ("curv4", "curv4"), ("square", "square"), ("tile", "tile"),
])
def test_classify_round_trip(tag, want):
    z = random_scheme(tag, np.random.default_rng(2))
    assert classify(z.dual).label == want


def test_hilbert_functions():
    rng = np.random.default_rng(0)
    assert hilbert_function(random_scheme("tile", rng).dual) == (1, 2, 1)
    assert hilbert_function(random_scheme("fat3", rng).dual) == (1, 2, 3)
    assert hilbert_function(random_scheme("curv4", rng).dual) == (1, 1, 1, 1)


def test_frames_are_invertible():
    rng = np.random.default_rng(0)
    for _ in range(100):
        f11, f12, f21, f22 = random_frame(rng)
        assert (f11 * f22 - f12 * f21) % P


def test_seeded_draws():
    a = random_scheme("tile", np.random.default_rng(0))
    b = random_scheme("tile", np.random.default_rng(0))
    c = random_scheme("tile", np.random.default_rng(1))
    assert a == b and a.support != c.support


@given(schemes)
def test_record_round_trip(z):
    assert scheme_from_record(scheme_to_record(z)).dual == z.dual


def test_record_errors():
    with pytest.raises(SchemeError, match="support"):
        scheme_from_record({"kind": "tile"})
    with pytest.raises(SchemeError, match="unknown"):
        scheme_from_record({"kind": "blob", "support": ["1", "2"]})
