"""Fixed-column CSV and JSON emitters.

Every table starts with a header recording the package version, the prime,
the seed and the trial count.  Rows are sorted before emission, and floats
never appear, so identical runs give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import sys

from . import __version__
from .exactla import P

COLUMNS = (
    "statement", "surface", "bundle", "d", "e", "a", "b", "r", "s", "t", "config",
    "dim", "length", "rank", "h0", "h1", "expected_h0", "value", "expected_value",
    "verdict", "trials_used", "seed", "witness", "agrees", "notes",
)


def header(seed: int, trials: int, **extra) -> dict:
    out = {"version": __version__, "p": P, "seed": int(seed), "trials": int(trials)}
    out.update({k: v for k, v in sorted(extra.items())})
    return out


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def normalise(row: dict) -> dict:
    unknown = set(row) - set(COLUMNS)
    if unknown:
        raise KeyError(f"unknown output columns {sorted(unknown)}")
    return {c: row.get(c) for c in COLUMNS}


def _sort_key(row: dict):
    def k(c):
        v = row.get(c)
        return (0, v, "") if isinstance(v, int) and not isinstance(v, bool) else (1, 0, _cell(v))

    return tuple(k(c) for c in COLUMNS)


def sort_rows(rows) -> list[dict]:
    return sorted((normalise(r) for r in rows), key=_sort_key)


def to_csv(rows, head: dict) -> str:
    buf = io.StringIO()
    for k, v in head.items():
        buf.write(f"# {k}={_cell(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in sort_rows(rows):
        w.writerow([_cell(r[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(rows, head: dict, summary: dict | None = None) -> str:
    doc = {"header": head, "columns": list(COLUMNS), "rows": sort_rows(rows)}
    if summary is not None:
        doc["summary"] = summary
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def report_row(report, bundle, statement: str = "hilbert", config: str = "", **cell) -> dict:
    """A table row from a :class:`~zeroschemes.postulation.PostulationReport`."""
    row = {
        "statement": statement, "surface": bundle.surface, "bundle": str(bundle), "config": config,
        "dim": report.dim, "length": report.length, "rank": report.rank, "h0": report.h0,
        "h1": report.h1, "expected_h0": report.expected_h0, "verdict": report.verdict,
        "trials_used": report.trials_used, "seed": report.seed, "witness": report.witness,
        "notes": report.notes,
    }
    row.update({k: v for k, v in bundle.to_record().items() if k != "surface"})
    row.update(cell)
    return row


def _surface_of(label: str) -> str:
    if label.startswith("P1xP1"):
        return "P1xP1"
    return "P2" if label.startswith("P2") else "Hirzebruch"


def suite_row(res) -> dict:
    """A table row from a :class:`~zeroschemes.theorems.suites.SuiteResult`."""
    row = {"statement": res.statement, "config": res.config, "agrees": res.agrees,
           "value": res.value, "expected_value": res.expected, "notes": res.note}
    rep = res.report
    if rep is not None:
        row.update(
            bundle=rep.bundle, dim=rep.dim, length=rep.length, rank=rep.rank, h0=rep.h0, h1=rep.h1,
            expected_h0=rep.expected_h0, verdict=rep.verdict, trials_used=rep.trials_used,
            seed=rep.seed, witness=rep.witness,
        )
        rep_notes = rep.notes
        if rep_notes:
            row["notes"] = "; ".join(x for x in (res.note, rep_notes) if x)
        row["surface"] = _surface_of(rep.bundle)
    for k in ("d", "e", "a", "b", "r", "s", "t"):
        if k in res.cell:
            row[k] = res.cell[k]
    if "k" in res.cell:
        row["config"] = f"#{res.cell['k']}" + (f" {row['config']}" if row["config"] else "")
    return row


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
