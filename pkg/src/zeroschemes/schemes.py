"""Connected zero-dimensional schemes as inverse systems.

A scheme supported at a point ``p`` of an affine chart is stored through its
dual: a basis of differential functionals ``f -> (D f)(p)`` whose common
kernel is the ideal of the scheme.  Each ``D`` is a polynomial in
``dx = d/dx`` and ``dy = d/dy`` (a :class:`DiffOp`).  Ideal quotient by a
local equation ``g = alpha*x + beta*y`` becomes contraction
``D -> alpha * dD/d(dx) + beta * dD/d(dy)``, so residuals and traces with
respect to chart lines are plain linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import exactla
from .exactla import P

MAX_ORDER = 5
# exponent pairs (i, j) with i + j <= MAX_ORDER, in a fixed order
_EXPONENTS = [(i, k - i) for k in range(MAX_ORDER + 1) for i in range(k, -1, -1)]
_EXP_INDEX = {e: n for n, e in enumerate(_EXPONENTS)}

SIMPLE_TAGS = ("point", "double", "jet2", "jet3", "jet4", "curv3", "curv4", "square", "tile")


class SchemeError(ValueError):
    """Invalid scheme parameters (non-invertible frame, unsupported order...)."""


@dataclass(frozen=True)
class DiffOp:
    """``sum c_ij dx^i dy^j`` with reduced nonzero coefficients."""

    terms: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, terms: Mapping[tuple[int, int], int]) -> "DiffOp":
        items = []
        for (i, j), c in terms.items():
            c %= P
            if c:
                if i + j > MAX_ORDER:
                    raise SchemeError(f"order {i + j} exceeds {MAX_ORDER}")
                items.append(((i, j), c))
        return cls(tuple(sorted(items)))

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "DiffOp":
        return cls.from_dict({(i, j): c})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    @property
    def order(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def contract(self, alpha: int, beta: int) -> "DiffOp":
        """Action of the linear form ``alpha*x + beta*y`` on the functional."""
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms:
            if i:
                out[(i - 1, j)] = (out.get((i - 1, j), 0) + alpha * i * c) % P
            if j:
                out[(i, j - 1)] = (out.get((i, j - 1), 0) + beta * j * c) % P
        return DiffOp.from_dict(out)

    def vector(self) -> list[int]:
        v = [0] * len(_EXPONENTS)
        for e, c in self.terms:
            v[_EXP_INDEX[e]] = c
        return v

    @classmethod
    def from_vector(cls, v: Iterable[int]) -> "DiffOp":
        return cls.from_dict({_EXPONENTS[n]: int(c) for n, c in enumerate(v) if int(c)})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.terms:
            mono = "*".join(s for s in (f"dx^{i}" if i else "", f"dy^{j}" if j else "") if s) or "1"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def _mul(f: dict, g: dict) -> dict:
    out: dict[tuple[int, int], int] = {}
    for (i, j), a in f.items():
        for (k, m), b in g.items():
            key = (i + k, j + m)
            out[key] = (out.get(key, 0) + a * b) % P
    return out


def _add(*fs: Mapping) -> dict:
    out: dict[tuple[int, int], int] = {}
    for f in fs:
        for key, c in f.items():
            out[key] = (out.get(key, 0) + c) % P
    return out


def _scale(f: Mapping, c: int) -> dict:
    return {key: (v * c) % P for key, v in f.items()}


def _pow(f: dict, k: int) -> dict:
    out = {(0, 0): 1}
    for _ in range(k):
        out = _mul(out, f)
    return out


Frame = tuple[int, int, int, int]
IDENTITY_FRAME: Frame = (1, 0, 0, 1)


def frame_det(frame: Frame) -> int:
    f11, f12, f21, f22 = frame
    return (f11 * f22 - f12 * f21) % P


@dataclass(frozen=True)
class SchemeKind:
    """Isomorphism type plus the local data fixing the embedding.

    ``frame`` is row-major ``(f11, f12, f21, f22)``; its columns are the
    directions ``u = (f11, f21)`` and ``v = (f12, f22)``.  For a tile the
    long side is tangent to ``u``; jets and curvilinear schemes are tangent
    to ``u``.  Residuals computed by :func:`residuate` carry ``frame=None``.
    """

    tag: str
    m: int = 1
    frame: Frame | None = None
    curvature: tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if self.tag == "fat":
            return "double" if self.m == 2 else f"fat{self.m}"
        if self.tag in ("jet", "curv"):
            return f"{self.tag}{self.m}"
        return self.tag


def point() -> SchemeKind:
    return SchemeKind("point")


def fat(m: int) -> SchemeKind:
    return SchemeKind("fat", m)


def jet(m: int, frame: Frame = IDENTITY_FRAME) -> SchemeKind:
    return SchemeKind("jet", m, tuple(frame))


def curvilinear(m: int, frame: Frame = IDENTITY_FRAME, c2: int = 0, c3: int = 0) -> SchemeKind:
    curv = (c2 % P,) if m == 3 else (c2 % P, c3 % P)
    return SchemeKind("curv", m, tuple(frame), curv)


def two_square(frame: Frame = IDENTITY_FRAME) -> SchemeKind:
    return SchemeKind("square", 4, tuple(frame))


def tile(frame: Frame = IDENTITY_FRAME) -> SchemeKind:
    return SchemeKind("tile", 4, tuple(frame))


def _frame_ops(kind: SchemeKind) -> list[dict]:
    """Dual basis in frame coordinates; keys are (order in du, order in dv)."""
    t, m = kind.tag, kind.m
    if t == "point":
        return [{(0, 0): 1}]
    if t == "fat":
        return [{(i, k - i): 1} for k in range(m) for i in range(k, -1, -1)]
    if t == "jet":
        return [{(k, 0): 1} for k in range(m)]
    if t == "curv":
        c2 = kind.curvature[0]
        c3 = kind.curvature[1] if m == 4 else 0
        ops = [{(0, 0): 1}, {(1, 0): 1}, _add({(2, 0): 1}, {(0, 1): 2 * c2})]
        if m == 4:
            ops.append(_add({(3, 0): 1}, {(1, 1): 6 * c2}, {(0, 1): 6 * c3}))
        return ops
    if t == "square":
        return [{(0, 0): 1}, {(1, 0): 1}, {(0, 1): 1}, {(1, 1): 1}]
    if t == "tile":
        return [{(0, 0): 1}, {(1, 0): 1}, {(0, 1): 1}, {(2, 0): 1}]
    raise SchemeError(f"unknown scheme tag {t!r}")


def _check_kind(kind: SchemeKind) -> None:
    t, m = kind.tag, kind.m
    if t == "fat" and not 2 <= m <= MAX_ORDER + 1:
        raise SchemeError(f"fat point order must be in 2..{MAX_ORDER + 1}, got {m}")
    if t == "jet" and m not in (2, 3, 4):
        raise SchemeError(f"jet length must be 2, 3 or 4, got {m}")
    if t == "curv" and m not in (3, 4):
        raise SchemeError(f"curvilinear length must be 3 or 4, got {m}")
    if t in ("jet", "curv", "square", "tile"):
        if kind.frame is None or len(kind.frame) != 4:
            raise SchemeError(f"{t} needs a frame of 4 integers")
        if frame_det(kind.frame) == 0:
            raise SchemeError(f"frame {kind.frame} is not invertible mod p")
    if t == "curv" and len(kind.curvature) != m - 2:
        raise SchemeError(f"curv{m} needs {m - 2} curvature coefficient(s)")


def _to_chart(op: dict, frame: Frame | None) -> DiffOp:
    if frame is None:
        return DiffOp.from_dict(op)
    f11, f12, f21, f22 = frame
    du = {(1, 0): f11, (0, 1): f21}
    dv = {(1, 0): f12, (0, 1): f22}
    out: dict = {}
    for (i, j), c in op.items():
        out = _add(out, _scale(_mul(_pow(du, i), _pow(dv, j)), c))
    return DiffOp.from_dict(out)


@dataclass(frozen=True)
class LocalScheme:
    support: tuple[int, int]
    kind: SchemeKind
    dual: tuple[DiffOp, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.dual)

    @property
    def length(self) -> int:
        return len(self.dual)


def length(z: LocalScheme) -> int:
    return len(z.dual)


def make_scheme(kind: SchemeKind, support: tuple[int, int]) -> LocalScheme:
    """Build the scheme of type ``kind`` at ``support`` (chart coordinates)."""
    _check_kind(kind)
    frame = kind.frame if kind.tag in ("jet", "curv", "square", "tile") else None
    dual = tuple(_to_chart(op, frame) for op in _frame_ops(kind))
    return LocalScheme((support[0] % P, support[1] % P), kind, dual)


def dual_matrix(ops: Iterable[DiffOp]) -> np.ndarray:
    return exactla.as_matrix([op.vector() for op in ops], cols=len(_EXPONENTS))


def rebase(ops: Iterable[DiffOp]) -> tuple[DiffOp, ...]:
    """Canonical basis (reduced echelon form) of the span of ``ops``."""
    ops = [op for op in ops if not op.is_zero()]
    if not ops:
        return ()
    R, _ = exactla.rref(dual_matrix(ops))
    # echelon keys sort low-order terms first; list low orders first
    basis = [DiffOp.from_vector(row) for row in R]
    return tuple(sorted(basis, key=lambda op: (op.order, op.terms)))


def span_contains(ops: Iterable[DiffOp], op: DiffOp) -> bool:
    ops = list(ops)
    base = exactla.rank(dual_matrix(ops))
    return exactla.rank(dual_matrix(ops + [op])) == base


def is_dual_closed(z: LocalScheme) -> bool:
    """True iff the dual span is stable under contraction by x and by y."""
    for op in z.dual:
        for alpha, beta in ((1, 0), (0, 1)):
            c = op.contract(alpha, beta)
            if not c.is_zero() and not span_contains(z.dual, c):
                return False
    return True


def hilbert_function(ops: Iterable[DiffOp]) -> tuple[int, ...]:
    """Local Hilbert function read off the order filtration of the dual."""
    ops = list(ops)
    if not ops:
        return ()
    M = dual_matrix(ops)
    n = len(ops)
    dims = []
    for k in range(MAX_ORDER + 1):
        high = [c for c, (i, j) in enumerate(_EXPONENTS) if i + j > k]
        dims.append(n - exactla.rank(M[:, high]) if high else n)
    out = [dims[0]] + [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def classify(ops: Iterable[DiffOp]) -> SchemeKind:
    """Isomorphism type of a dual span (frame data is not recovered)."""
    ops = list(ops)
    h = hilbert_function(ops)
    if h == (1,):
        return SchemeKind("point")
    if all(x == 1 for x in h):
        return SchemeKind("jet" if len(h) == 2 else "curv", len(h))
    if h == (1, 2, 1):
        # top-order form is a square for tiles, a product of distinct lines for 2-squares
        R, piv = exactla.rref(dual_matrix(ops)[:, ::-1])
        top = DiffOp.from_vector(R[0][::-1].tolist()).as_dict()
        a, b, c = top.get((2, 0), 0), top.get((1, 1), 0), top.get((0, 2), 0)
        disc = (b * b - 4 * a * c) % P
        return SchemeKind("tile" if disc == 0 else "square", 4)
    if all(h[k] == k + 1 for k in range(len(h))):
        return SchemeKind("fat", len(h))
    return SchemeKind("residual", sum(h))


def residuate(z: LocalScheme, g: tuple[int, int, int]) -> tuple[int, LocalScheme | None]:
    """Trace length and residual of ``z`` with respect to the line ``g = 0``.

    ``g = (alpha, beta, gamma)`` stands for ``alpha*x + beta*y + gamma``.
    The trace dual is the kernel of contraction by the local equation, the
    residual dual its image; both are computed, so the returned pair
    satisfies ``trace + length(residual) == length(z)`` by rank-nullity
    rather than by definition.  The residual is ``None`` when empty.
    """
    alpha, beta, gamma = (int(c) % P for c in g)
    if alpha == 0 and beta == 0:
        raise SchemeError("line equation has no linear part")
    x, y = z.support
    if (alpha * x + beta * y + gamma) % P:
        return 0, z
    images = [op.contract(alpha, beta) for op in z.dual]
    res_dual = rebase(images)
    n = len(z.dual)
    # kernel of the contraction map, expressed in the dual basis
    C = exactla.as_matrix([op.vector() for op in images], cols=len(_EXPONENTS))
    trace = exactla.kernel_basis(C.T).shape[0] if n else 0
    if trace + len(res_dual) != n:  # pragma: no cover - rank-nullity
        raise AssertionError("residual length identity violated")
    if not res_dual:
        return trace, None
    return trace, LocalScheme(z.support, classify(res_dual), res_dual)


def trace_dual(z: LocalScheme, g: tuple[int, int, int]) -> tuple[DiffOp, ...]:
    """Dual basis of ``z`` cut by the line (functionals killed by contraction)."""
    alpha, beta, gamma = (int(c) % P for c in g)
    x, y = z.support
    if (alpha * x + beta * y + gamma) % P:
        return ()
    images = [op.contract(alpha, beta) for op in z.dual]
    C = exactla.as_matrix([op.vector() for op in images], cols=len(_EXPONENTS))
    K = exactla.kernel_basis(C.T)
    ops = []
    for row in K:
        acc: dict = {}
        for coef, op in zip(row.tolist(), z.dual):
            if coef:
                acc = _add(acc, _scale(op.as_dict(), coef))
        ops.append(DiffOp.from_dict(acc))
    return rebase(ops)


def random_frame(rng: np.random.Generator) -> Frame:
    while True:
        f = tuple(exactla.random_fp(rng, 4))
        if frame_det(f):
            return f


def kind_from_tag(tag: str, rng: np.random.Generator) -> SchemeKind:
    """Random-parameter kind for a template tag, e.g. ``"tile"`` or ``"fat3"``."""
    if tag == "point":
        return point()
    if tag == "double":
        return fat(2)
    if tag.startswith("fat"):
        return fat(int(tag[3:]))
    if tag.startswith("jet"):
        return jet(int(tag[3:]), random_frame(rng))
    if tag.startswith("curv"):
        m = int(tag[4:])
        frame = random_frame(rng)
        return curvilinear(m, frame, *exactla.random_fp(rng, m - 2))
    if tag == "square":
        return two_square(random_frame(rng))
    if tag == "tile":
        return tile(random_frame(rng))
    raise SchemeError(f"unknown scheme tag {tag!r}")


def random_scheme(tag: str, rng: np.random.Generator, support: tuple[int, int] | None = None) -> LocalScheme:
    if support is None:
        support = tuple(exactla.random_fp(rng, 2))
    return make_scheme(kind_from_tag(tag, rng), support)


@dataclass(frozen=True)
class Configuration:
    """Disjoint union of local schemes with pairwise distinct supports."""

    schemes: tuple[LocalScheme, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "schemes", tuple(self.schemes))
        seen = set()
        for z in self.schemes:
            if z.support in seen:
                raise SchemeError(f"support collision at {z.support}")
            seen.add(z.support)

    @property
    def total_length(self) -> int:
        return sum(len(z) for z in self.schemes)

    def __len__(self) -> int:
        return len(self.schemes)

    def __iter__(self):
        return iter(self.schemes)

    def __add__(self, other: "Configuration") -> "Configuration":
        return Configuration(self.schemes + tuple(other.schemes))

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for z in self.schemes:
            out[z.kind.label] = out.get(z.kind.label, 0) + 1
        return out


# --- serialisation -----------------------------------------------------------


def scheme_to_record(z: LocalScheme) -> dict:
    k = z.kind
    rec = {"kind": k.label, "support": [str(c) for c in z.support]}
    if k.frame is not None:
        rec["frame"] = [str(c) for c in k.frame]
    if k.curvature:
        rec["curvature"] = [str(c) for c in k.curvature]
    return rec


def scheme_from_record(rec: Mapping) -> LocalScheme:
    try:
        label = rec["kind"]
        support = tuple(int(c) for c in rec["support"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemeError(f"scheme record needs 'kind' and 'support': {exc}") from None
    if len(support) != 2:
        raise SchemeError("support must have two coordinates")
    frame = tuple(int(c) for c in rec.get("frame", IDENTITY_FRAME))
    curv = [int(c) for c in rec.get("curvature", [])]
    if label == "point":
        kind = point()
    elif label == "double":
        kind = fat(2)
    elif label.startswith("fat"):
        kind = fat(int(label[3:]))
    elif label.startswith("jet"):
        kind = jet(int(label[3:]), frame)
    elif label.startswith("curv"):
        m = int(label[4:])
        curv = (curv + [0, 0])[: m - 2]
        kind = curvilinear(m, frame, *curv)
    elif label == "square":
        kind = two_square(frame)
    elif label == "tile":
        kind = tile(frame)
    else:
        raise SchemeError(f"unknown scheme kind {label!r}")
    return make_scheme(kind, support)
