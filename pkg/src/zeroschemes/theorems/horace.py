"""One step of the residual exact sequence with respect to a chart line."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..postulation import evaluate
from ..schemes import Configuration, residuate
from ..surfaces import Bundle, LinearSystem, Line, is_chart_line, restricted_dim, twist_down


class HoraceError(ValueError):
    pass


@dataclass
class HoraceStep:
    bundle: Bundle
    line: Line
    traces: list[int]
    residual: Configuration
    twisted: Bundle | None
    h0_total: int
    h0_trace: int
    h0_residual: int
    length_ok: bool
    pieces: list[tuple[int, int]] = field(default_factory=list)

    @property
    def trace_total(self) -> int:
        return sum(self.traces)

    @property
    def inequality_ok(self) -> bool:
        return self.h0_total <= self.h0_trace + self.h0_residual

    @property
    def ok(self) -> bool:
        return self.length_ok and self.inequality_ok


def residual_configuration(c: Configuration, line: Line) -> tuple[list[int], Configuration, list[tuple[int, int]]]:
    """Per-scheme traces and the union of the residual schemes."""
    traces, kept, pieces = [], [], []
    for z in c:
        t, res = residuate(z, line.equation)
        traces.append(t)
        pieces.append((t, 0 if res is None else len(res)))
        if res is not None:
            kept.append(res)
    return traces, Configuration(tuple(kept)), pieces


def horace_step(v, c: Configuration, line: Line) -> HoraceStep:
    """Split ``c`` along ``line`` and check the exact-sequence bound.

    ``h0(I_X(L)) <= h0(I_{X cap D, D}(L|D)) + h0(I_{Res_D X}(L - D))``, where
    the middle term is ``max(0, h0(L|D) - trace)`` because every
    zero-dimensional scheme on a line imposes independent conditions.
    """
    bundle = v.bundle if isinstance(v, LinearSystem) else v
    if isinstance(v, LinearSystem) and v.base is not None:
        raise HoraceError("horace_step needs a complete linear system")
    if not isinstance(line, Line):
        raise HoraceError(f"expected a Line, got {line!r}")
    if not is_chart_line(bundle, line):
        raise HoraceError(f"{line} is not a ruling/fibre line of {bundle.surface}")
    traces, residual, pieces = residual_configuration(c, line)
    length_ok = all(t + r == len(z) for (t, r), z in zip(pieces, c))
    _, h0_total, _ = evaluate(LinearSystem(bundle), c)
    h0_trace = max(0, restricted_dim(bundle, line) - sum(traces))
    twisted = twist_down(bundle, line)
    h0_res = 0 if twisted is None else evaluate(LinearSystem(twisted), residual)[1]
    return HoraceStep(bundle, line, traces, residual, twisted, h0_total, h0_trace, h0_res, length_ok, pieces)


def residual_kinds(step: HoraceStep) -> list[str]:
    return [z.kind.label for z in step.residual]


__all__ = ["HoraceStep", "HoraceError", "horace_step", "residual_configuration", "residual_kinds"]
