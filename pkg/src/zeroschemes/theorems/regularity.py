"""Unions with prescribed index of regularity, and degree scans.

All constructions put their special supports on one chart line: ``y = 0``
on P2 and ``x = 0`` (a curve of class (1, 0)) on P1xP1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import exactla
from ..postulation import evaluate, random_configuration
from ..schemes import Configuration, make_scheme, tile, two_square
from ..surfaces import Bundle, LinearSystem, P1xP1, P2

KINDS = ("new1", "new11", "new2_0", "new3")


class ConstructionError(ValueError):
    pass


def _distinct(rng, n: int) -> list[int]:
    out: list[int] = []
    while len(out) < n:
        x = exactla.random_fp(rng)
        if x not in out:
            out.append(x)
    return out


def _transverse(rng, along: tuple[int, int]) -> tuple[int, int]:
    """A random direction independent of ``along``."""
    while True:
        w = tuple(exactla.random_fp(rng, 2))
        if (along[0] * w[1] - along[1] * w[0]) % exactla.P:
            return w


def _frame(u, v):
    return (u[0], v[0], u[1], v[1])


def new2_0_range(t: int) -> tuple[int, int]:
    """Admissible degrees for the three-residue construction with ``t`` tiles."""
    lo = math.ceil((1 + math.sqrt(288 * t - 369)) / 6 - 1e-12)
    return lo, 3 * t - 2


def build_regularity_config(kind: str, params: dict, rng: np.random.Generator) -> Configuration:
    """Deterministic special union for ``kind`` (randomness only from ``rng``).

    * ``new1`` (``t``): t 2-squares ``2L cap 2R_p`` at points of ``L``;
    * ``new11`` (``t``): t tiles on ``L`` with ``L`` as common long side;
    * ``new2_0`` (``t``, ``d``): tiles on ``L`` chosen by ``d mod 3`` plus
      general tiles, so that ``h1(d) != 0`` and ``h1(d + 1) = 0``;
    * ``new3`` (``t``): t tiles on the (1, 0) line ``x = 0``, each having it
      as long side.
    """
    t = int(params.get("t", 0))
    if kind not in KINDS:
        raise ConstructionError(f"unknown construction {kind!r}; expected one of {KINDS}")
    if kind in ("new1", "new11", "new3") and t < 2:
        raise ConstructionError(f"{kind} needs t >= 2, got t={t}")
    ex = (1, 0)
    if kind == "new3":
        ys = _distinct(rng, t)
        along = (0, 1)
        return Configuration(tuple(make_scheme(tile(_frame(along, _transverse(rng, along))), (0, y)) for y in ys))
    if kind in ("new1", "new11"):
        xs = _distinct(rng, t)
        make = two_square if kind == "new1" else tile
        return Configuration(tuple(make_scheme(make(_frame(ex, _transverse(rng, ex))), (x, 0)) for x in xs))
    # new2_0
    if t < 3:
        raise ConstructionError(f"new2_0 needs t >= 3, got t={t}")
    d = int(params.get("d", -1))
    lo, hi = new2_0_range(t)
    if not lo <= d <= hi:
        raise ConstructionError(f"new2_0 with t={t} needs {lo} <= d <= {hi}, got d={d}")
    if d % 3 == 1:
        n_long, n_cross = (d + 2) // 3, 0
    elif d % 3 == 2:
        n_long, n_cross = (d - 2) // 3, 2
    else:
        n_long, n_cross = d // 3, 1
    n_general = t - n_long - n_cross
    if n_general < 0:
        raise ConstructionError(f"new2_0 with t={t}, d={d} needs {n_long + n_cross} tiles on the line")
    xs = _distinct(rng, n_long + n_cross)
    on_line = []
    for k, x in enumerate(xs):
        u = ex if k < n_long else _transverse(rng, ex)
        on_line.append(make_scheme(tile(_frame(u, _transverse(rng, u))), (x, 0)))
    avoid = {z.support for z in on_line}
    general = random_configuration({"tile": n_general}, rng, avoid)
    # general supports off the line y = 0 with probability 1 - O(1/p)
    return Configuration(tuple(on_line)) + general


def regularity_family(kind: str, params: dict) -> Callable[[int], Bundle]:
    if kind == "new3":
        d = int(params["d"])
        return lambda e: P1xP1(d, e)
    return P2


@dataclass
class ScanRow:
    degree: int
    dim: int
    h0: int
    h1: int


def regularity_scan(c: Configuration, family: Callable[[int], Bundle], d_max: int, d_min: int = 1) -> tuple[list[ScanRow], int | None]:
    """``h0``/``h1`` of ``c`` for each degree; also the least degree with ``h1 = 0``."""
    rows = []
    for deg in range(d_min, d_max + 1):
        v = LinearSystem(family(deg))
        _, h0, h1 = evaluate(v, c)
        rows.append(ScanRow(deg, v.dim, h0, h1))
    index = next((r.degree for r in rows if r.h1 == 0), None)
    return rows, index
