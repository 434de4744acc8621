import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import P, rank_mod
from zeroschemes import _kernels, exactla
from zeroschemes.schemes import fat, make_scheme
from zeroschemes.surfaces import P2, functional_matrix, monomial_basis

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])

entries = st.one_of(st.integers(0, 3), st.integers(0, P - 1))


def matrices(max_side=7):
    return st.integers(0, max_side).flatmap(
        lambda r: st.integers(0, max_side).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r).map(
                lambda rows: (rows, c)
            )
        )
    )


def test_prime():
    assert exactla.P == P == 2305843009213693951


def test_rank_examples():
    assert exactla.rank(exactla.as_matrix([], 0)) == 0
    assert exactla.rank(exactla.identity(3)) == 3


def test_double_point_against_conics_rank_3():
    # eval, d/dx, d/dy at (1, 1) against 1, x, y, x^2, xy, y^2
    m = functional_matrix([make_scheme(fat(2), (1, 1))], monomial_basis(P2(2)))
    assert m.tolist() == [[1, 1, 1, 1, 1, 1], [0, 1, 0, 2, 1, 0], [0, 0, 1, 0, 1, 2]]
    assert exactla.rank(m) == 3


def test_kernel_examples():
    assert exactla.kernel_basis(exactla.identity(2)).shape == (0, 2)
    k = exactla.kernel_basis(exactla.as_matrix([[1, 0]]))
    assert k.shape == (1, 2) and k[0, 0] == 0 and k[0, 1] != 0


def test_two_double_points_on_conics_kernel_is_one():
    rng = np.random.default_rng(3)
    pts = [tuple(exactla.random_fp(rng, 2)) for _ in range(2)]
    m = functional_matrix([make_scheme(fat(2), p) for p in pts], monomial_basis(P2(2)))
    assert exactla.kernel_basis(m).shape[0] == 1


def test_inverse():
    for x in (1, 2, 12345, P - 1):
        assert x * exactla.inv(x) % P == 1
    with pytest.raises(ZeroDivisionError):
        exactla.inv(0)


@pytest.mark.parametrize("backend", BACKENDS)
@given(matrices())
def test_rank_matches_oracle(backend, data):
    rows, c = data
    m = exactla.as_matrix(rows, c)
    r = exactla.rank(m, backend=backend)
    assert r == rank_mod(rows)
    assert r <= min(m.shape)


@given(matrices(), st.randoms(use_true_random=False))
def test_rank_permutation_invariant(data, rnd):
    rows, c = data
    m = exactla.as_matrix(rows, c)
    pr = list(range(m.shape[0]))
    pc = list(range(m.shape[1]))
    rnd.shuffle(pr)
    rnd.shuffle(pc)
    assert exactla.rank(m[pr][:, pc]) == exactla.rank(m)


@given(matrices(), st.lists(st.integers(0, P - 1), min_size=7, max_size=7))
def test_row_space_row_keeps_rank(data, coeffs):
    rows, c = data
    if not rows:
        return
    m = exactla.as_matrix(rows, c)
    combo = [sum(coeffs[i] * rows[i][j] for i in range(len(rows))) % P for j in range(c)]
    assert exactla.rank(np.vstack([m, exactla.as_matrix([combo], c)])) == exactla.rank(m)


@pytest.mark.parametrize("backend", BACKENDS)
@given(matrices())
def test_kernel_multiplies_to_zero(backend, data):
    rows, c = data
    m = exactla.as_matrix(rows, c)
    k = exactla.kernel_basis(m, backend=backend)
    assert k.shape == (c - exactla.rank(m), c)
    if k.shape[0] and m.shape[0]:
        assert not exactla.matmul(m, k.T, backend=backend).any()
    assert exactla.rank(k) == k.shape[0]


@given(matrices(5), matrices(5))
def test_matmul_matches_python(a, b):
    ra, ca = a
    rb, cb = b
    if ca != len(rb):
        rb = [[1] * cb for _ in range(ca)]
    want = [[sum(row[k] * rb[k][j] for k in range(ca)) % P for j in range(cb)] for row in ra]
    got = exactla.matmul(exactla.as_matrix(ra, ca), exactla.as_matrix(rb, cb))
    assert got.shape == (len(ra), cb)
    assert got.tolist() == [[int(x) for x in r] for r in want]


def test_rref_is_reduced():
    rng = np.random.default_rng(7)
    m = exactla.as_matrix([[int(x) for x in exactla.random_fp(rng, 6)] for _ in range(4)])
    m[3] = m[0]
    r, piv = exactla.rref(m)
    assert r.shape[0] == 3
    for k, c in enumerate(piv):
        col = r[:, c]
        assert col[k] == 1 and np.count_nonzero(col) == 1


def test_random_fp_in_range_and_seeded():
    a = exactla.random_fp(np.random.default_rng(0), 100)
    b = exactla.random_fp(np.random.default_rng(0), 100)
    assert a == b and all(0 <= x < P for x in a)
