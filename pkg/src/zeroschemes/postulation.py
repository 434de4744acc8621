"""Conditions matrices, h0/h1 with one-sided certification, spans and secants.

Rank can only drop under specialisation, so a random configuration reaching
the expected maximal rank proves the statement for the general member of
its family.  A random configuration falling short proves nothing by itself;
it is reported ``Defective`` only when an independent witness section from
the exception catalog confirms it, and ``Inconclusive`` otherwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Mapping

import numpy as np

from . import catalog as _catalog
from . import exactla
from .exactla import P
from .schemes import Configuration, random_scheme
from .surfaces import Bundle, LinearSystem, functional_matrix, hirzebruch_alt_dim, sample_point

CERTIFIED = "Certified"
DEFECTIVE = "Defective"
INCONCLUSIVE = "Inconclusive"

DEFAULT_TRIALS = 3
DEFAULT_SEED = 0

# draw order for template tags; fixed so a seed maps to one configuration
TAG_ORDER = (
    "point", "double", "fat3", "fat4", "fat5", "fat6",
    "jet2", "jet3", "jet4", "curv3", "curv4", "square", "tile",
)


@dataclass
class PostulationReport:
    bundle: str
    dim: int
    length: int
    rank: int
    h0: int
    h1: int
    expected_h0: int
    verdict: str
    trials_used: int
    seed: int
    trial_index: int = 0
    witness: str = ""
    notes: str = ""

    @property
    def defect(self) -> int:
        return self.h0 - self.expected_h0

    def to_record(self) -> dict:
        return asdict(self)


def _as_system(v) -> LinearSystem:
    return v if isinstance(v, LinearSystem) else LinearSystem(v)


def conditions_matrix(v, c: Configuration) -> np.ndarray:
    """Rows: dual functionals of ``c``; columns: a basis of ``V``."""
    v = _as_system(v)
    M = functional_matrix(c, v.basis)
    if v.columns is None:
        return M
    return exactla.matmul(M, v.columns)


def evaluate(v, c: Configuration) -> tuple[int, int, int]:
    """``(rank, h0, h1)`` of the configuration against ``V``."""
    v = _as_system(v)
    r = exactla.rank(conditions_matrix(v, c))
    return r, v.dim - r, c.total_length - r


def expected_h0(v, c) -> int:
    length = c if isinstance(c, int) else c.total_length
    return max(0, _as_system(v).dim - length)


def template_length(template: Mapping[str, int]) -> int:
    sizes = {"point": 1, "double": 3, "square": 4, "tile": 4}
    total = 0
    for tag, n in template.items():
        if tag in sizes:
            total += sizes[tag] * n
        elif tag.startswith("fat"):
            m = int(tag[3:])
            total += m * (m + 1) // 2 * n
        elif tag.startswith(("jet", "curv")):
            total += int(tag[3:] if tag.startswith("jet") else tag[4:]) * n
        else:
            raise ValueError(f"unknown scheme tag {tag!r}")
    return total


def _ordered(template: Mapping[str, int]) -> list[tuple[str, int]]:
    extra = sorted(t for t in template if t not in TAG_ORDER)
    return [(t, template[t]) for t in (*TAG_ORDER, *extra) if template.get(t)]


def random_configuration(template: Mapping[str, int], rng: np.random.Generator, avoid=()) -> Configuration:
    """Independent random schemes, ``template[tag]`` of each kind."""
    taken = set(avoid)
    schemes = []
    for tag, n in _ordered(template):
        for _ in range(n):
            pt = sample_point(rng, taken)
            taken.add(pt)
            schemes.append(random_scheme(tag, rng, support=pt))
    return Configuration(tuple(schemes))


def _notes(bundle: Bundle) -> str:
    if bundle.surface != "Hirzebruch":
        return ""
    alt = hirzebruch_alt_dim(bundle)
    n = bundle.h0 - 1
    return "" if alt == n else f"ambient dim h0-1={n}; ab-a(a-1)e/2-1={alt}"


def defect_witness(v, c: Configuration, candidate) -> bool:
    """True iff ``candidate`` is a nonzero element of ``V`` vanishing on ``c``."""
    v = _as_system(v)
    vec = exactla.as_matrix([[int(x) for x in candidate]])
    if vec.shape[1] != v.dim:
        raise ValueError(f"candidate has {vec.shape[1]} coordinates, V has dim {v.dim}")
    if not vec.any():
        return False
    M = conditions_matrix(v, c)
    if M.shape[0] == 0:
        return True
    return not exactla.matmul(M, vec.T).any()


def report_for(v, c: Configuration, seed: int = DEFAULT_SEED, trial_index: int = 0) -> PostulationReport:
    """Report for one fixed configuration; defectivity is left ``Inconclusive``."""
    v = _as_system(v)
    r, h0, h1 = evaluate(v, c)
    exp = expected_h0(v, c)
    return PostulationReport(
        bundle=str(v.bundle), dim=v.dim, length=c.total_length, rank=r, h0=h0, h1=h1,
        expected_h0=exp, verdict=CERTIFIED if h0 == exp else INCONCLUSIVE,
        trials_used=1, seed=seed, trial_index=trial_index, notes=_notes(v.bundle),
    )


def postulate(
    v,
    template: Mapping[str, int],
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    catalog=None,
) -> PostulationReport:
    """Sample general unions from ``template`` and certify maximal rank.

    Up to ``trials`` random configurations are drawn from
    ``np.random.default_rng(seed)``; sampling stops at the first one with
    ``h0 == expected``.  Otherwise the cell is ``Defective`` if it is in the
    exception catalog and the catalog witness is accepted by
    :func:`defect_witness` on the best trial, ``Inconclusive`` if not.
    ``catalog=()`` disables the lookup.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    v = _as_system(v)
    rng = np.random.default_rng(seed)
    avoid = {z.support for z in v.base} if v.base is not None else set()
    best = best_config = None
    used = 0
    for k in range(trials):
        used = k + 1
        c = random_configuration(template, rng, avoid)
        rep = report_for(v, c, seed=seed, trial_index=k)
        if best is None or rep.h0 < best.h0:
            best, best_config = rep, c
        if rep.verdict == CERTIFIED:
            break
    best.trials_used = used
    if best.verdict != CERTIFIED and v.base is None:
        case = _catalog.lookup(v.bundle, dict(template), catalog)
        if case is not None:
            section = case.witness(best_config)
            if defect_witness(v, best_config, section) and best.defect == case.predicted_defect:
                best.verdict = DEFECTIVE
                best.witness = case.witness_id
    return best


def span_dim(embedding, c: Configuration) -> int:
    """Projective dimension of the span of ``c`` in the embedding by ``V``."""
    return exactla.rank(conditions_matrix(_as_system(embedding), c)) - 1


def secant_dim(embedding, r: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> int:
    """Dimension of the r-th secant variety via spans of r random double points."""
    if r < 1:
        raise ValueError("r must be >= 1")
    v = _as_system(embedding)
    rng = np.random.default_rng(seed)
    best = -1
    target = min(v.dim - 1, 3 * r - 1)
    for _ in range(trials):
        best = max(best, span_dim(v, random_configuration({"double": r}, rng)))
        if best == target:
            break
    return best


def expected_span_dim(v, r: int, s: int) -> int:
    """``min(n, 3r + 4s - 1)`` for r double points and s 2-squares."""
    return min(_as_system(v).dim - 1, 3 * r + 4 * s - 1)


__all__ = [
    "CERTIFIED", "DEFECTIVE", "INCONCLUSIVE", "PostulationReport", "Configuration",
    "conditions_matrix", "evaluate", "expected_h0", "postulate", "report_for",
    "defect_witness", "span_dim", "secant_dim", "expected_span_dim",
    "random_configuration", "template_length", "P",
]
