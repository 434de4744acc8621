"""Command-line front end.

Subcommands: ``hilbert`` (one configuration), ``verify`` (a statement
suite), ``regularity`` (a deterministic construction scanned over degrees)
and ``secant`` (span and secant dimensions).  Exit codes: 0 on success or
agreement, 1 on usage errors, 2 on an Inconclusive or disagreeing row.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import output
from .postulation import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    INCONCLUSIVE,
    expected_span_dim,
    postulate,
    random_configuration,
    report_for,
    secant_dim,
    span_dim,
)
from .schemes import Configuration, SchemeError, scheme_from_record
from .surfaces import Bundle, BundleError, LinearSystem

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

COUNT_FLAGS = {
    "points": "point",
    "double": "double",
    "tiles": "tile",
    "squares": "square",
    "jets2": "jet2",
    "jets3": "jet3",
    "curv3": "curv3",
    "curv4": "curv4",
}


class UsageError(Exception):
    pass


def _nonneg(field: str, v) -> int:
    try:
        n = int(v)
    except (TypeError, ValueError):
        raise UsageError(f"{field}: expected an integer, got {v!r}") from None
    if n < 0:
        raise UsageError(f"{field}: must be >= 0, got {n}")
    return n


def _fat_spec(s: str) -> tuple[int, int]:
    try:
        m, n = s.split(":")
        m, n = int(m), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--fat expects m:count, got {s!r}") from None
    if m < 1 or n < 0:
        raise argparse.ArgumentTypeError(f"--fat expects m >= 1 and count >= 0, got {s!r}")
    return m, n


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {s!r}") from None


def _bundle(rec: dict) -> Bundle:
    surf = rec.get("surface")
    if surf is None:
        raise UsageError("surface: required (p2, p1p1 or hirz)")
    fields = {"p2": ("d",), "P2": ("d",), "p1p1": ("d", "e"), "P1xP1": ("d", "e"),
              "hirz": ("e", "a", "b"), "Hirzebruch": ("e", "a", "b")}
    if surf not in fields:
        raise UsageError(f"surface: unknown surface {surf!r}")
    clean = {"surface": surf}
    for f in fields[surf]:
        if rec.get(f) is None:
            raise UsageError(f"{f}: required for surface {surf}")
        clean[f] = _nonneg(f, rec[f])
    try:
        return Bundle.from_record(clean)
    except BundleError as exc:
        raise UsageError(f"b: {exc}") from None


def _counts_from_args(args) -> dict:
    counts = {tag: getattr(args, flag) for flag, tag in COUNT_FLAGS.items() if getattr(args, flag, 0)}
    for m, n in getattr(args, "fat", None) or ():
        tag = "point" if m == 1 else "double" if m == 2 else f"fat{m}"
        counts[tag] = counts.get(tag, 0) + n
    return counts


def load_config(path: str) -> dict:
    """A flat JSON record: bundle fields, ``counts``, optional ``schemes``, ``seed``, ``trials``."""
    try:
        with open(path, encoding="utf-8") as fh:
            rec = json.load(fh)
    except OSError as exc:
        raise UsageError(f"config: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(rec, dict):
        raise UsageError("config: top level must be a record")
    return rec


def _run_config(args) -> dict:
    rec = load_config(args.config) if args.config else {}
    merged = dict(rec)
    for f in ("surface", "d", "e", "a", "b"):
        if getattr(args, f) is not None:
            merged[f] = getattr(args, f)
    counts = dict(rec.get("counts", {}))
    if not isinstance(counts, dict):
        raise UsageError("counts: must be a record of kind -> count")
    for tag, n in counts.items():
        counts[tag] = _nonneg(f"counts.{tag}", n)
    counts.update(_counts_from_args(args))
    schemes = []
    for i, srec in enumerate(rec.get("schemes", [])):
        try:
            schemes.append(scheme_from_record(srec))
        except (SchemeError, TypeError, ValueError) as exc:
            raise UsageError(f"schemes[{i}]: {exc}") from None
    seed = args.seed if args.seed is not None else _nonneg("seed", rec.get("seed", DEFAULT_SEED))
    trials = args.trials if args.trials is not None else _nonneg("trials", rec.get("trials", DEFAULT_TRIALS))
    if trials < 1:
        raise UsageError("trials: must be >= 1")
    return {"bundle": _bundle(merged), "counts": counts, "schemes": schemes, "seed": seed, "trials": trials}


def _counts_label(counts: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(counts.items()) if v)


def _write(args, rows, head, summary=None) -> None:
    text = output.to_json(rows, head, summary) if args.format == "json" else output.to_csv(rows, head)
    output.emit(text, args.out)


# --- subcommands ------------------------------------------------------------------


def cmd_hilbert(args) -> int:
    cfg = _run_config(args)
    bundle, counts, schemes = cfg["bundle"], cfg["counts"], cfg["schemes"]
    if schemes:
        try:
            fixed = Configuration(tuple(schemes))
            extra = random_configuration(counts, np.random.default_rng(cfg["seed"]), {z.support for z in fixed})
            c = fixed + extra
        except SchemeError as exc:
            raise UsageError(f"schemes: {exc}") from None
        rep = report_for(LinearSystem(bundle), c, seed=cfg["seed"])
        label = f"explicit={len(schemes)}" + (f";{_counts_label(counts)}" if counts else "")
    else:
        try:
            rep = postulate(bundle, counts, cfg["trials"], cfg["seed"])
        except (SchemeError, ValueError) as exc:
            raise UsageError(f"counts: {exc}") from None
        label = _counts_label(counts)
    row = output.report_row(rep, bundle, config=label)
    _write(args, [row], output.header(cfg["seed"], cfg["trials"], command="hilbert"))
    return EXIT_FAIL if rep.verdict == INCONCLUSIVE else EXIT_OK


def _suite(args):
    from .theorems import suites as S

    seed, trials = args.seed, args.trials
    sid = args.statement
    if sid == "tiles-p2":
        return S.verify_tiles_p2(range(1, (args.dmax or 12) + 1), trials, seed)
    if sid == "fattiles-p2":
        return S.verify_fattiles_p2(range(1, (args.dmax or 10) + 1), trials, seed)
    if sid == "p1p1":
        return S.verify_p1p1(range(1, (args.dmax or 8) + 1), range(1, (args.emax or 8) + 1), trials, seed)
    if sid == "hirzebruch":
        es = (args.e,) if args.e is not None else (1, 2, 3)
        amax = args.amax or 3
        if amax < 2:
            raise UsageError("amax: the F_e statement needs a >= 2")
        return S.verify_hirzebruch(es, range(2, amax + 1), args.bmargin or 4, trials, seed)
    if sid == "cone":
        es = (args.e,) if args.e is not None else (3, 4, 5)
        return S.verify_cone(es, trials, seed)
    if sid == "twosquare-lemma":
        return S.verify_twosquare_lemma(args.count or 100, seed=seed)
    if sid == "curvilinear":
        return S.verify_curvilinear(args.count or 100, trials, seed)
    if sid == "divisor-points":
        return S.verify_divisor_points(args.count or 100, seed)
    if sid == "corollary-mixed":
        return S.verify_corollary_mixed(args.count or 200, trials, seed, dmax=args.dmax or 10, emax=args.emax or 7) \
            + S.corollary_d2_mixed_cells(trials, seed)
    if sid == "regularity":
        return S.verify_regularity(seed)
    raise UsageError(f"statement: unknown id {sid!r}")


def cmd_verify(args) -> int:
    from .theorems.suites import summary

    if args.trials < 1:
        raise UsageError("trials: must be >= 1")
    results = _suite(args)
    rows = [output.suite_row(r) for r in results]
    _write(args, rows, output.header(args.seed, args.trials, command="verify", statement=args.statement),
           summary(results))
    if args.format == "csv" and args.out:
        sys.stderr.write(json.dumps(summary(results), sort_keys=True) + "\n")
    return EXIT_OK if all(r.agrees for r in results) else EXIT_FAIL


def cmd_regularity(args) -> int:
    from .theorems.regularity import ConstructionError, build_regularity_config, regularity_family, regularity_scan

    params = {"t": args.t}
    if args.d is not None:
        params["d"] = args.d
    if args.kind == "new3" and args.d is None:
        raise UsageError("d: required for new3")
    try:
        c = build_regularity_config(args.kind, params, np.random.default_rng(args.seed))
    except ConstructionError as exc:
        raise UsageError(f"params: {exc}") from None
    family = regularity_family(args.kind, params)
    dmax = args.dmax or (3 * args.t + 1 if args.kind != "new3" else 3 * args.t)
    scan, index = regularity_scan(c, family, dmax, 0 if args.kind == "new3" else 1)
    rows = []
    for r in scan:
        cell = {"e": r.degree, "d": args.d} if args.kind == "new3" else {"d": r.degree}
        row = {"statement": f"regularity-{args.kind}", "config": f"t={args.t}", "t": args.t,
               "dim": r.dim, "length": c.total_length, "h0": r.h0, "h1": r.h1, "value": index,
               "seed": args.seed}
        row.update(cell)
        b = family(r.degree)
        row.update(surface=b.surface, bundle=str(b))
        if args.kind == "new3" and args.e is not None and r.degree == args.e:
            row["notes"] = "requested"
        rows.append(row)
    _write(args, rows, output.header(args.seed, 1, command="regularity", kind=args.kind, index=index))
    return EXIT_OK


def cmd_secant(args) -> int:
    bundle = _bundle({k: getattr(args, k) for k in ("surface", "d", "e", "a", "b")})
    v = LinearSystem(bundle)
    rows = []
    if args.r:
        for r in args.r:
            if r < 1:
                raise UsageError("r: each entry must be >= 1")
            got = secant_dim(v, r, args.trials, args.seed)
            want = expected_span_dim(v, r, 0)
            rows.append({"statement": "secant", "r": r, "s": 0, "value": got, "expected_value": want,
                         "agrees": got == want, "notes": "" if got == want else "defective",
                         "dim": v.dim, "seed": args.seed, "trials_used": args.trials})
    else:
        r, s = args.double or 0, args.squares or 0
        rng = np.random.default_rng(args.seed)
        want = expected_span_dim(v, r, s)
        got = -1
        for _ in range(args.trials):
            got = max(got, span_dim(v, random_configuration({"double": r, "square": s}, rng)))
            if got == want:
                break
        rows.append({"statement": "span", "r": r, "s": s, "value": got, "expected_value": want,
                     "agrees": got == want, "notes": "" if got == want else "defective",
                     "dim": v.dim, "seed": args.seed, "trials_used": args.trials})
    for row in rows:
        row.update(surface=bundle.surface, bundle=str(bundle))
    _write(args, rows, output.header(args.seed, args.trials, command="secant"))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, seed_default=DEFAULT_SEED, trials_default=DEFAULT_TRIALS) -> None:
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--trials", type=int, default=trials_default)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH")


def _bundle_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--surface", choices=("p2", "p1p1", "hirz"))
    for f in ("d", "e", "a", "b"):
        p.add_argument(f"--{f}", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeroschemes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", help="h0/h1 of one union of schemes")
    _bundle_flags(h)
    for flag in COUNT_FLAGS:
        h.add_argument(f"--{flag}", type=int, default=0)
    h.add_argument("--fat", type=_fat_spec, action="append", metavar="M:COUNT")
    h.add_argument("--config", metavar="FILE", help="JSON run record")
    _common(h, None, None)
    h.set_defaults(func=cmd_hilbert)

    v = sub.add_parser("verify", help="run a statement suite")
    v.add_argument("statement")
    for f in ("dmax", "emax", "e", "amax", "bmargin", "count"):
        v.add_argument(f"--{f}", type=int)
    _common(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("regularity", help="scan a regularity construction")
    r.add_argument("kind", choices=("new1", "new11", "new2_0", "new3"))
    r.add_argument("--t", type=int, required=True)
    r.add_argument("--d", type=int)
    r.add_argument("--e", type=int)
    r.add_argument("--dmax", type=int)
    _common(r)
    r.set_defaults(func=cmd_regularity)

    s = sub.add_parser("secant", help="secant or span dimensions")
    _bundle_flags(s)
    s.add_argument("--r", type=_int_list, help="comma-separated secant orders")
    s.add_argument("--double", type=int)
    s.add_argument("--squares", type=int)
    _common(s)
    s.set_defaults(func=cmd_secant)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"zeroschemes {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
