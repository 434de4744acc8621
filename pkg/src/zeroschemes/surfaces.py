"""Target surfaces, monomial bases of line bundles, and linear systems.

Each surface is viewed in one affine chart with coordinates ``(x, y)``:

* ``P2(d)``: polynomials of total degree <= d;
* ``P1xP1(d, e)``: degree <= d in ``x`` and <= e in ``y``; ``x = c`` is a
  curve of class (1, 0);
* ``Hirzebruch(e, a, b)``: sections of ``a*h + b*f`` on F_e written as
  ``sum_i t**i g_i(s)`` with ``deg g_i <= b - i*e``, where ``x = s`` is the
  base coordinate and ``y = t`` the fibre coordinate.  ``s = c`` is a fibre
  and ``t = c`` a curve of class ``h + e*f``.

An exponent pair ``(i, j)`` always means the monomial ``x**i * y**j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels, exactla
from .exactla import P
from .schemes import Configuration, LocalScheme

SURFACES = ("P2", "P1xP1", "Hirzebruch")


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class Bundle:
    surface: str
    d: int = 0
    e: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.surface not in SURFACES:
            raise BundleError(f"unknown surface {self.surface!r}")
        if min(self.d, self.e, self.a, self.b) < 0:
            raise BundleError(f"negative degree in {self}")
        if self.surface == "Hirzebruch" and self.b < self.a * self.e:
            raise BundleError(f"Hirzebruch bundle needs b >= a*e, got a={self.a}, b={self.b}, e={self.e}")

    def __str__(self) -> str:
        if self.surface == "P2":
            return f"P2({self.d})"
        if self.surface == "P1xP1":
            return f"P1xP1({self.d},{self.e})"
        return f"F{self.e}({self.a}h+{self.b}f)"

    @property
    def h0(self) -> int:
        return len(monomial_basis(self))

    def to_record(self) -> dict:
        if self.surface == "P2":
            return {"surface": "P2", "d": self.d}
        if self.surface == "P1xP1":
            return {"surface": "P1xP1", "d": self.d, "e": self.e}
        return {"surface": "Hirzebruch", "e": self.e, "a": self.a, "b": self.b}

    @classmethod
    def from_record(cls, rec: dict) -> "Bundle":
        surf = rec.get("surface")
        aliases = {"p2": "P2", "p1p1": "P1xP1", "hirz": "Hirzebruch"}
        surf = aliases.get(str(surf).lower(), surf)
        try:
            if surf == "P2":
                return P2(int(rec["d"]))
            if surf == "P1xP1":
                return P1xP1(int(rec["d"]), int(rec["e"]))
            if surf == "Hirzebruch":
                return Hirzebruch(int(rec["e"]), int(rec["a"]), int(rec["b"]))
        except KeyError as exc:
            raise BundleError(f"bundle record missing field {exc.args[0]!r}") from None
        raise BundleError(f"unknown surface {surf!r}")


def P2(d: int) -> Bundle:
    return Bundle("P2", d=d)


def P1xP1(d: int, e: int) -> Bundle:
    return Bundle("P1xP1", d=d, e=e)


def Hirzebruch(e: int, a: int, b: int) -> Bundle:
    return Bundle("Hirzebruch", e=e, a=a, b=b)


@lru_cache(maxsize=None)
def _basis(bundle: Bundle) -> tuple[tuple[int, int], ...]:
    if bundle.surface == "P2":
        d = bundle.d
        return tuple((i, k - i) for k in range(d + 1) for i in range(k, -1, -1))
    if bundle.surface == "P1xP1":
        return tuple((i, j) for j in range(bundle.e + 1) for i in range(bundle.d + 1))
    return tuple((j, i) for i in range(bundle.a + 1) for j in range(bundle.b - i * bundle.e + 1))


def monomial_basis(bundle: Bundle) -> list[tuple[int, int]]:
    return list(_basis(bundle))


def expected_basis_size(bundle: Bundle) -> int:
    """Closed-form count of :func:`monomial_basis`."""
    if bundle.surface == "P2":
        return (bundle.d + 2) * (bundle.d + 1) // 2
    if bundle.surface == "P1xP1":
        return (bundle.d + 1) * (bundle.e + 1)
    a, b, e = bundle.a, bundle.b, bundle.e
    return (a + 1) * (b + 1) - e * a * (a + 1) // 2


def hirzebruch_alt_dim(bundle: Bundle) -> int:
    """``a*b - a*(a-1)*e/2 - 1``, an alternative ambient-dimension count.

    It disagrees with ``h0 - 1`` (e.g. F1(2h+3f): 4 against 8); reports
    carry both so the difference stays visible.
    """
    a, b, e = bundle.a, bundle.b, bundle.e
    return a * b - a * (a - 1) * e // 2 - 1


# --- lines in the chart ----------------------------------------------------


@dataclass(frozen=True)
class Line:
    """The chart curve ``alpha*x + beta*y + gamma = 0``."""

    alpha: int
    beta: int
    gamma: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.alpha % P)
        object.__setattr__(self, "beta", self.beta % P)
        object.__setattr__(self, "gamma", self.gamma % P)
        if self.alpha == 0 and self.beta == 0:
            raise BundleError("line needs a nonzero linear part")

    @property
    def equation(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)

    def contains(self, pt: tuple[int, int]) -> bool:
        return (self.alpha * pt[0] + self.beta * pt[1] + self.gamma) % P == 0

    def point_at(self, param: int) -> tuple[int, int]:
        """A point of the line, parameterised by ``param``."""
        if self.beta:
            x = param % P
            y = (-(self.alpha * x + self.gamma) * exactla.inv(self.beta)) % P
        else:
            y = param % P
            x = (-self.gamma * exactla.inv(self.alpha)) % P
        return (x, y)

    def direction(self) -> tuple[int, int]:
        return ((-self.beta) % P, self.alpha)

    @classmethod
    def horizontal(cls, c: int = 0) -> "Line":
        """``y = c``."""
        return cls(0, 1, -c)

    @classmethod
    def vertical(cls, c: int = 0) -> "Line":
        """``x = c``."""
        return cls(1, 0, -c)

    @classmethod
    def through(cls, p: tuple[int, int], q: tuple[int, int]) -> "Line":
        dx, dy = (q[0] - p[0]) % P, (q[1] - p[1]) % P
        return cls(dy, -dx, dx * p[1] - dy * p[0])


def is_chart_line(bundle: Bundle, line: Line) -> bool:
    """Lines allowed as divisors: any line on P2, rulings/fibres otherwise."""
    if bundle.surface == "P2":
        return True
    return line.alpha == 0 or line.beta == 0


def twist_down(bundle: Bundle, line: Line) -> Bundle | None:
    """``bundle(-D)`` for the divisor ``D = line``; ``None`` if it has no sections.

    On F_e a twist with ``b < a*e`` is returned as ``(b // e) h + b f``, which
    has the same chart monomials.
    """
    if not is_chart_line(bundle, line):
        raise BundleError(f"{line} is not a divisor line on {bundle.surface}")
    try:
        if bundle.surface == "P2":
            return P2(bundle.d - 1)
        if bundle.surface == "P1xP1":
            if line.beta == 0:  # x = c, class (1, 0)
                return P1xP1(bundle.d - 1, bundle.e)
            return P1xP1(bundle.d, bundle.e - 1)
        if line.beta == 0:  # s = c, a fibre
            a, b = bundle.a, bundle.b - 1
        else:
            a, b = bundle.a - 1, bundle.b - bundle.e
        if b >= 0 and a >= 0 and b < a * bundle.e:
            # the negative section is a fixed component, off the chart: same monomials
            a = b // bundle.e
        return Hirzebruch(bundle.e, a, b)
    except BundleError:
        return None


def restricted_dim(bundle: Bundle, line: Line) -> int:
    """``h0`` of the bundle restricted to the line (a P1)."""
    if not is_chart_line(bundle, line):
        raise BundleError(f"{line} is not a divisor line on {bundle.surface}")
    if bundle.surface == "P2":
        return bundle.d + 1
    if bundle.surface == "P1xP1":
        return (bundle.e if line.beta == 0 else bundle.d) + 1
    if line.beta == 0:
        return bundle.a + 1
    return bundle.b + 1


# --- sampling ------------------------------------------------------------------


def sample_point(rng: np.random.Generator, avoid=()) -> tuple[int, int]:
    avoid = set(avoid)
    while True:
        pt = tuple(exactla.random_fp(rng, 2))
        if pt not in avoid:
            return pt


# --- evaluation ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _falling(maxdeg: int) -> np.ndarray:
    ff = np.zeros((maxdeg + 1, 7), dtype=np.uint64)
    for a in range(maxdeg + 1):
        acc = 1
        for i in range(7):
            ff[a, i] = acc % P
            acc *= a - i
            if acc <= 0:
                acc = 0
    return ff


def functional_matrix(schemes, basis, backend: str | None = None) -> np.ndarray:
    """One row per dual functional of each scheme, one column per monomial."""
    trow, ti, tj, tc, tpx, tpy = [], [], [], [], [], []
    row = 0
    for z in schemes:
        px, py = z.support
        for op in z.dual:
            for (i, j), c in op.terms:
                trow.append(row)
                ti.append(i)
                tj.append(j)
                tc.append(c)
                tpx.append(px)
                tpy.append(py)
            row += 1
    ma = np.array([m[0] for m in basis], dtype=np.int64)
    mb = np.array([m[1] for m in basis], dtype=np.int64)
    maxdeg = int(max(ma.max(initial=0), mb.max(initial=0)))
    ff = _falling(maxdeg)
    kern = _kernels.kernels(backend)[2]
    return kern(
        row,
        np.array(trow, dtype=np.int64),
        np.array(ti, dtype=np.int64),
        np.array(tj, dtype=np.int64),
        np.array(tc, dtype=np.uint64),
        np.array(tpx, dtype=np.uint64),
        np.array(tpy, dtype=np.uint64),
        ma,
        mb,
        ff,
    )


class LinearSystem:
    """``V = H0(bundle)`` or the subspace vanishing on ``base``.

    ``columns`` is a ``(h0 x dim)`` matrix whose columns span ``V`` in the
    monomial basis (``None`` for the complete system).
    """

    def __init__(self, bundle: Bundle, base: Configuration | None = None):
        self.bundle = bundle
        self.base = base if base is not None and len(base) else None
        self.basis = monomial_basis(bundle)
        if self.base is None:
            self.columns = None
        else:
            M = functional_matrix(self.base, self.basis)
            self.columns = np.ascontiguousarray(exactla.kernel_basis(M).T)

    @property
    def dim(self) -> int:
        return len(self.basis) if self.columns is None else self.columns.shape[1]

    def restrict(self, extra: Configuration) -> "LinearSystem":
        """The subsystem ``V(-extra)``."""
        base = extra if self.base is None else self.base + extra
        return LinearSystem(self.bundle, base)

    def __repr__(self) -> str:
        return f"LinearSystem({self.bundle}, dim={self.dim})"


def dim(v: LinearSystem) -> int:
    return v.dim


# --- polynomials as coefficient dicts ---------------------------------------------


def poly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for (i, j), a in f.items():
        for (k, m), b in g.items():
            key = (i + k, j + m)
            out[key] = (out.get(key, 0) + a * b) % P
    return {k: v for k, v in out.items() if v}


def poly_from_vector(bundle: Bundle, v) -> dict:
    return {m: int(c) for m, c in zip(monomial_basis(bundle), v) if int(c)}


def poly_to_vector(bundle: Bundle, f: dict) -> np.ndarray:
    basis = monomial_basis(bundle)
    index = {m: n for n, m in enumerate(basis)}
    out = np.zeros(len(basis), dtype=np.uint64)
    for m, c in f.items():
        if c % P:
            if m not in index:
                raise BundleError(f"monomial {m} not in the basis of {bundle}")
            out[index[m]] = c % P
    return out
