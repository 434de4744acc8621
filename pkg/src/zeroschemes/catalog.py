"""Known defective cells together with explicit witness sections.

Every entry is a union of general double points whose conditions fail to
be independent because a squared curve through the supports is singular at
all of them.  A witness constructor takes the configuration and returns
that squared curve as a coefficient vector in the monomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import exactla
from .schemes import make_scheme, point
from .surfaces import (
    Bundle,
    Hirzebruch,
    P1xP1,
    P2,
    functional_matrix,
    monomial_basis,
    poly_from_vector,
    poly_mul,
    poly_to_vector,
)


@dataclass(frozen=True)
class ExceptionCase:
    surface: str
    params: dict = field(hash=False)
    counts: dict = field(hash=False)
    predicted_defect: int
    witness_id: str
    witness: Callable = field(repr=False, hash=False, compare=False)

    def bundle(self) -> Bundle:
        return Bundle(self.surface, **self.params)

    def matches(self, bundle: Bundle, counts: dict) -> bool:
        counts = {k: v for k, v in counts.items() if v}
        return bundle == self.bundle() and counts == self.counts


def _squared_curve_through(curve_bundle: Bundle, target: Bundle, supports) -> np.ndarray:
    """Square of the unique curve of ``curve_bundle`` through the points."""
    pts = [make_scheme(point(), s) for s in supports]
    M = functional_matrix(pts, monomial_basis(curve_bundle))
    K = exactla.kernel_basis(M)
    if K.shape[0] != 1:
        raise ValueError(f"expected a unique curve of {curve_bundle}, kernel has dim {K.shape[0]}")
    f = poly_from_vector(curve_bundle, K[0])
    return poly_to_vector(target, poly_mul(f, f))


def _supports(config):
    return [z.support for z in config]


def conic_line_witness(config) -> np.ndarray:
    """Square of the line through two points, a conic."""
    return _squared_curve_through(P2(1), P2(2), _supports(config))


def double_conic_witness(config) -> np.ndarray:
    """Square of the conic through five points, a quartic."""
    return _squared_curve_through(P2(2), P2(4), _supports(config))


def product_witness(d: int, e: int):
    """Square of the (1, u) curve (or (u, 1)) through 2u + 1 points."""
    if d == 2:
        u = e // 2
        curve = P1xP1(1, u)
    else:
        u = d // 2
        curve = P1xP1(u, 1)

    def witness(config):
        return _squared_curve_through(curve, P1xP1(d, e), _supports(config))

    return witness


def hirzebruch_witness(e: int, b: int):
    """Square of the curve in |h + (b/2) f| through b - e + 1 points."""

    def witness(config):
        return _squared_curve_through(Hirzebruch(e, 1, b // 2), Hirzebruch(e, 2, b), _supports(config))

    return witness


@lru_cache(maxsize=None)
def product_family_r(u: int) -> int:
    """Which double-point count is defective on P1xP1(2, 2u): u+1 or 2u+1.

    Decided by rank at a random configuration for each candidate; the one
    whose ``h0`` exceeds the expected value is returned.
    """
    from .postulation import postulate

    found = []
    for r in (u + 1, 2 * u + 1):
        rep = postulate(_linear_system(P1xP1(2, 2 * u)), {"double": r}, trials=3, seed=u, catalog=())
        if rep.h0 > rep.expected_h0:
            found.append(r)
    if len(found) != 1:
        raise RuntimeError(f"could not resolve the defective count for u={u}: {found}")
    return found[0]


def _linear_system(bundle):
    from .surfaces import LinearSystem

    return LinearSystem(bundle)


@lru_cache(maxsize=None)
def _catalog(umax: int, hirzebruch: bool) -> tuple[ExceptionCase, ...]:
    return tuple(_build_catalog(umax, hirzebruch))


def exception_catalog(umax: int = 4, hirzebruch: bool = True) -> list[ExceptionCase]:
    return list(_catalog(umax, hirzebruch))


def _build_catalog(umax: int, hirzebruch: bool) -> list[ExceptionCase]:
    """P2 sporadic cells, the P1xP1 family for u <= umax, and F_e double-point cells.

    The F_e cells are ``2h + bf`` with ``b`` even, ``b > 2e`` and ``b - e + 1``
    double points, for ``e <= 3`` and ``b <= 2e + 4``.
    """
    out = [
        ExceptionCase("P2", {"d": 2}, {"double": 2}, 1, "line^2", conic_line_witness),
        ExceptionCase("P2", {"d": 4}, {"double": 5}, 1, "conic^2", double_conic_witness),
    ]
    for u in range(1, umax + 1):
        r = product_family_r(u)
        cells = [(2, 2 * u)] if u == 1 else [(2, 2 * u), (2 * u, 2)]
        for d, e in cells:
            wid = f"(1,{u})-curve^2" if d == 2 else f"({u},1)-curve^2"
            out.append(ExceptionCase("P1xP1", {"d": d, "e": e}, {"double": r}, 1, wid, product_witness(d, e)))
    if hirzebruch:
        for e in (1, 2, 3):
            for b in range(2 * e + 1, 2 * e + 5):
                if b % 2 == 0:
                    out.append(
                        ExceptionCase(
                            "Hirzebruch",
                            {"e": e, "a": 2, "b": b},
                            {"double": b - e + 1},
                            1,
                            f"(h+{b // 2}f)-curve^2",
                            hirzebruch_witness(e, b),
                        )
                    )
    return out


def lookup(bundle: Bundle, counts: dict, catalog=None) -> ExceptionCase | None:
    for case in exception_catalog() if catalog is None else catalog:
        if case.matches(bundle, counts):
            return case
    return None
