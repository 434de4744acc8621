"""Dense linear algebra over F_p with p = 2**61 - 1.

Matrices are plain ``numpy`` arrays of dtype ``uint64`` holding reduced
residues.  Scalars outside matrices are Python ints.  The elimination loops
themselves live in :mod:`zeroschemes._kernels`.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from ._kernels import P

__all__ = [
    "P",
    "as_matrix",
    "identity",
    "rank",
    "rref",
    "kernel_basis",
    "matmul",
    "inv",
    "random_fp",
    "backend",
]


def backend() -> str:
    return _kernels.BACKEND


def as_matrix(rows, cols: int | None = None) -> np.ndarray:
    """Coerce integers (possibly negative or >= p) to a reduced uint64 matrix.

    ``cols`` fixes the width for an empty list of rows.
    """
    if isinstance(rows, np.ndarray) and rows.dtype == np.uint64 and rows.ndim == 2:
        return rows
    rows = list(rows) if not isinstance(rows, np.ndarray) else rows
    if len(rows) == 0:
        return np.zeros((0, cols or 0), dtype=np.uint64)
    arr = np.array([[int(x) % P for x in row] for row in rows], dtype=np.uint64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array of integers")
    return arr


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint64)


def rref(m: np.ndarray, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of ``m``.

    Returns ``(R, pivots)`` where the first ``len(pivots)`` rows of ``R``
    are the nonzero rows and ``pivots[i]`` is the column of row ``i``'s
    leading one.  ``m`` is not modified.
    """
    a = np.array(as_matrix(m), dtype=np.uint64, copy=True)
    if a.size == 0:
        return a, np.zeros(0, dtype=np.int64)
    echelon = _kernels.kernels(backend)[0]
    r, piv = echelon(a, True)
    return a[:r], piv


def rank(m: np.ndarray, backend: str | None = None) -> int:
    a = np.array(as_matrix(m), dtype=np.uint64, copy=True)
    if a.size == 0:
        return 0
    echelon = _kernels.kernels(backend)[0]
    r, _ = echelon(a, False)
    return int(r)


def kernel_basis(m: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Basis of the right kernel ``{v : m @ v = 0}``, one vector per row."""
    a = as_matrix(m)
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n)
    R, piv = rref(a, backend)
    free = [c for c in range(n) if c not in set(piv.tolist())]
    out = np.zeros((len(free), n), dtype=np.uint64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            x = int(R[i, f])
            if x:
                out[k, pc] = P - x
    return out


def matmul(a: np.ndarray, b: np.ndarray, backend: str | None = None) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    return _kernels.kernels(backend)[1](np.ascontiguousarray(a), np.ascontiguousarray(b))


def inv(x: int) -> int:
    x %= P
    if x == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(x, P - 2, P)


def random_fp(rng: np.random.Generator, size=None):
    """Uniform element(s) of F_p as Python int(s)."""
    if size is None:
        return int(rng.integers(0, P, dtype=np.uint64))
    return [int(v) for v in rng.integers(0, P, size=size, dtype=np.uint64)]
