"""Hot loops over the Mersenne prime field F_p, p = 2**61 - 1.

Every kernel exists twice: a scalar loop version compiled with numba and a
vectorised pure-numpy version.  ``BACKEND`` picks the one used by default;
set ``ZEROSCHEMES_BACKEND=numpy`` to force the numpy path (numba is used
whenever it imports otherwise).  Both paths share the same mod-p product so
results are bit-identical.

All values are ``uint64`` in ``[0, p)``.  The product splits each operand
at bit 31 so no intermediate ever exceeds 2**63.
"""

from __future__ import annotations

import os

import numpy as np

P = (1 << 61) - 1

_P = np.uint64(P)
_TWO = np.uint64(2)
_ONE = np.uint64(1)
_M30 = np.uint64((1 << 30) - 1)
_M31 = np.uint64((1 << 31) - 1)
_S1 = np.uint64(1)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S61 = np.uint64(61)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_requested = os.environ.get("ZEROSCHEMES_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"ZEROSCHEMES_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = _requested or ("numba" if HAVE_NUMBA else "numpy")
if BACKEND == "numba" and not HAVE_NUMBA:  # pragma: no cover
    BACKEND = "numpy"


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def mulmod_np(a, b):
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    au = a >> _S31
    ad = a & _M31
    bu = b >> _S31
    bd = b & _M31
    mid = ad * bu + au * bd
    x = ((au * bu) << _S1) + (mid >> _S30) + ((mid & _M30) << _S31) + ad * bd
    x = (x & _P) + (x >> _S61)
    return x - _P * (x >= _P).astype(np.uint64)


def addmod_np(a, b):
    x = np.asarray(a, dtype=np.uint64) + np.asarray(b, dtype=np.uint64)
    return x - _P * (x >= _P).astype(np.uint64)


def submod_np(a, b):
    return addmod_np(a, _P - np.asarray(b, dtype=np.uint64))


def echelon_np(a, reduced):
    """Row-reduce ``a`` in place; return ``(rank, pivot_columns)``."""
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = np.uint64(pow(int(a[r, c]), P - 2, P))
        a[r, c:] = mulmod_np(a[r, c:], inv)
        rows = np.arange(0 if reduced else r + 1, m)
        rows = rows[rows != r]
        rows = rows[a[rows, c] != 0]
        if rows.size:
            f = a[rows, c]
            a[rows, c:] = submod_np(a[rows, c:], mulmod_np(f[:, None], a[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


def matmul_np(a, b):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.uint64)
    for t in range(k):
        out = addmod_np(out, mulmod_np(a[:, t : t + 1], b[t : t + 1, :]))
    return out


def conditions_np(nrows, trow, ti, tj, tc, tpx, tpy, ma, mb, ff):
    """Evaluate differential terms against monomials x**ma * y**mb.

    Term ``t`` contributes ``tc * d^ti/dx^ti d^tj/dy^tj (x^a y^b)`` at
    ``(tpx, tpy)`` to row ``trow[t]``; ``ff[a, i]`` is the falling factorial.
    """
    ncols = ma.shape[0]
    out = np.zeros((nrows, ncols), dtype=np.uint64)
    nterms = trow.shape[0]
    if nterms == 0 or ncols == 0:
        return out
    maxdeg = ff.shape[0]
    pwx = np.empty((nterms, maxdeg), dtype=np.uint64)
    pwy = np.empty((nterms, maxdeg), dtype=np.uint64)
    pwx[:, 0] = 1
    pwy[:, 0] = 1
    for k in range(1, maxdeg):
        pwx[:, k] = mulmod_np(pwx[:, k - 1], tpx)
        pwy[:, k] = mulmod_np(pwy[:, k - 1], tpy)
    da = ma[None, :] - ti[:, None]
    db = mb[None, :] - tj[:, None]
    live = (da >= 0) & (db >= 0)
    da = np.where(live, da, 0)
    db = np.where(live, db, 0)
    idx = np.arange(nterms)[:, None]
    coef = mulmod_np(ff[ma[None, :], ti[:, None]], ff[mb[None, :], tj[:, None]])
    coef = mulmod_np(coef, tc[:, None])
    val = mulmod_np(coef, mulmod_np(pwx[idx, da], pwy[idx, db]))
    val[~live] = 0
    for t in range(nterms):
        out[trow[t]] = addmod_np(out[trow[t]], val[t])
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _mulmod(a, b):
        au = a >> _S31
        ad = a & _M31
        bu = b >> _S31
        bd = b & _M31
        mid = ad * bu + au * bd
        x = ((au * bu) << _S1) + (mid >> _S30) + ((mid & _M30) << _S31) + ad * bd
        x = (x & _P) + (x >> _S61)
        if x >= _P:
            x -= _P
        return x

    @njit(cache=True, inline="always")
    def _addmod(a, b):
        x = a + b
        if x >= _P:
            x -= _P
        return x

    @njit(cache=True, inline="always")
    def _submod(a, b):
        if a >= b:
            return a - b
        return a + (_P - b)

    @njit(cache=True)
    def _powmod(a, e):
        r = _ONE
        while e > 0:
            if e & _ONE:
                r = _mulmod(r, a)
            a = _mulmod(a, a)
            e >>= _S1
        return r

    @njit(cache=True)
    def echelon_nb(a, reduced):
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            k = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(n):
                    tmp = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = tmp
            inv = _powmod(a[r, c], _P - _TWO)
            for j in range(c, n):
                a[r, j] = _mulmod(a[r, j], inv)
            start = 0 if reduced else r + 1
            for i in range(start, m):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    a[i, j] = _submod(a[i, j], _mulmod(f, a[r, j]))
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

    @njit(cache=True)
    def matmul_nb(a, b):
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.uint64)
        for i in range(m):
            for t in range(k):
                x = a[i, t]
                if x == 0:
                    continue
                for j in range(n):
                    out[i, j] = _addmod(out[i, j], _mulmod(x, b[t, j]))
        return out

    @njit(cache=True)
    def conditions_nb(nrows, trow, ti, tj, tc, tpx, tpy, ma, mb, ff):
        ncols = ma.shape[0]
        out = np.zeros((nrows, ncols), dtype=np.uint64)
        maxdeg = ff.shape[0]
        pwx = np.empty(maxdeg, dtype=np.uint64)
        pwy = np.empty(maxdeg, dtype=np.uint64)
        for t in range(trow.shape[0]):
            pwx[0] = _ONE
            pwy[0] = _ONE
            for k in range(1, maxdeg):
                pwx[k] = _mulmod(pwx[k - 1], tpx[t])
                pwy[k] = _mulmod(pwy[k - 1], tpy[t])
            i = ti[t]
            j = tj[t]
            row = trow[t]
            for col in range(ncols):
                a = ma[col]
                b = mb[col]
                if a < i or b < j:
                    continue
                v = _mulmod(tc[t], _mulmod(ff[a, i], ff[b, j]))
                v = _mulmod(v, _mulmod(pwx[a - i], pwy[b - j]))
                out[row, col] = _addmod(out[row, col], v)
        return out

else:  # pragma: no cover
    echelon_nb = matmul_nb = conditions_nb = None


_IMPLS = {
    "numpy": (echelon_np, matmul_np, conditions_np),
    "numba": (echelon_nb, matmul_nb, conditions_nb),
}


def kernels(backend=None):
    """Return ``(echelon, matmul, conditions)`` for a backend name."""
    name = backend or BACKEND
    if name not in _IMPLS or _IMPLS[name][0] is None:
        raise ValueError(f"backend {name!r} unavailable")
    return _IMPLS[name]
