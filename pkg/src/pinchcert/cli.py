"""Command-line entry point for the certification pipeline.

Exit codes: 0 all checks passed, 1 hard violation or failed chain step,
2 undecided certificate, 3 usage or configuration error.  Diagnostics go to
stderr; data goes to stdout or to --out.  The default invocation (no
subcommand) prints the acceptance summary: constants, chain verification and
the bootstrap at the published settings.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import bootstrap, chain, falsifier
from .constants import catalog, derive_refined_quadratic
from .dyadic import DEFAULT_PRECISION, DyadicInterval, fraction_to_decimal
from .render import canonical_json, interval_obj, plain_decimal, to_csv, to_markdown

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 3

ENV_PRECISION = "PINCHCERT_PRECISION"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_precision() -> int:
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
        if value < 8:
            raise ValueError
        return value
    except ValueError:
        raise UsageError(f"invalid {ENV_PRECISION}={raw!r}; need an integer >= 8")


def _parse_fraction(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid {name}: {text!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="pinchcert",
                     description="certified pinching-bound verification pipeline")
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--format", choices=("json", "csv", "md"), default="json")
        p.add_argument("--out", default=None, help="write data to a file")
        p.add_argument("--precision", type=int, default=None,
                       help="working mantissa bits (default 128 or $%s)" % ENV_PRECISION)

    p = sub.add_parser("constants", help="dump the constants registry")
    add_common(p)

    p = sub.add_parser("verify", help="verify the inequality-chain ledger")
    add_common(p)
    p.add_argument("--step", default=None, help="verify a single step (S1..S11)")
    p.add_argument("--a7", default=None,
                   help="override the bootstrap coefficient (exact decimal)")

    p = sub.add_parser("bootstrap", help="run the certified recurrence")
    add_common(p)
    p.add_argument("--t-star", required=True, help="split ratio in (0, 1)")
    p.add_argument("--n", type=int, required=True, help="dimension (>= 5)")
    p.add_argument("--k", type=int, default=7, help="number of entries (default 7)")

    p = sub.add_parser("solve-split", help="solve the nested fixed point for t*")
    add_common(p)
    p.add_argument("--n", type=int, required=True, help="dimension (>= 6)")
    p.add_argument("--tol", default="1/1000000", help="bracket width target")

    p = sub.add_parser("bound", help="per-dimension lower-bound table")
    add_common(p)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--mode", choices=("paper", "per-n"), default="paper")

    p = sub.add_parser("falsify", help="randomized falsification campaign")
    add_common(p)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=falsifier.RTOL)

    p = sub.add_parser("gap", help="explore the open gap functional")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    return parser


# --------------------------------------------------------------------------
# subcommand payload builders: return (exit_code, rows_for_tables, payload)
# --------------------------------------------------------------------------

def _cmd_constants(args, precision):
    rows = []
    for entry in catalog(precision):
        rows.append({
            "key": entry.key,
            "closed_form_text": entry.closed_form_text,
            "lo": fraction_to_decimal(entry.enclosure.lo),
            "hi": fraction_to_decimal(entry.enclosure.hi),
            "paper_decimal": (None if entry.paper_decimal is None
                              else plain_decimal(entry.paper_decimal)),
            "anchor": entry.anchor,
        })
    return EXIT_OK, rows, {"constants": rows, "precision": precision}


def _verdict_exit(verdicts) -> int:
    if any(v in ("failed", "skipped") for v in verdicts):
        return EXIT_FAILED
    if any(v == "undecided" for v in verdicts):
        return EXIT_UNDECIDED
    return EXIT_OK


def _cmd_verify(args, precision):
    a7 = None
    if args.a7 is not None:
        a7 = DyadicInterval.from_fraction(_parse_fraction(args.a7, "--a7"), precision)
    if args.step is not None:
        if args.step not in chain.STEP_ORDER:
            raise UsageError(f"unknown step {args.step!r}; steps are {chain.STEP_ORDER}")
        result = chain.verify_step(args.step, a7=a7, precision=precision)
        rows = [{"step": result.name, "anchor": result.anchor, "kind": result.kind,
                 "verdict": result.verdict, "residual": result.residual}]
        code = _verdict_exit([result.verdict])
        return code, rows, {"steps": rows, "all_verified": result.verdict == "verified"}
    report = chain.verify_all(a7=a7, precision=precision)
    rows = report.to_obj()
    code = _verdict_exit([r.verdict for r in report.results])
    payload = {"steps": rows, "all_verified": report.all_verified,
               "counts": report.counts}
    return code, rows, payload


def _cmd_bootstrap(args, precision):
    t_star = _parse_fraction(args.t_star, "--t-star")
    if not (0 <= t_star < 1):
        raise UsageError(f"--t-star must lie in [0, 1), got {args.t_star}")
    if args.n < 5:
        raise UsageError("--n must be at least 5")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    trace = bootstrap.iterate(t_star, args.n, args.k, precision)
    fp = bootstrap.fixed_point(t_star, args.n, precision=precision)
    rows = [{"k": i + 1, **interval_obj(e)} for i, e in enumerate(trace.entries)]
    payload = {
        "t_star": str(t_star),
        "n": args.n,
        "entries": trace.to_obj(),
        "fixed_point": interval_obj(fp),
    }
    return EXIT_OK, rows, payload


def _cmd_solve_split(args, precision):
    if args.n < 6:
        raise UsageError("--n must be at least 6 for the refined pipeline")
    tol = _parse_fraction(args.tol, "--tol")
    if tol <= 0:
        raise UsageError("--tol must be positive")
    enclosure = bootstrap.solve_split(args.n, tol, precision)
    row = {"n": args.n, **interval_obj(enclosure)}
    return EXIT_OK, [row], {"n": args.n, "t_star": interval_obj(enclosure),
                            "tol": str(tol)}


def _cmd_bound(args, precision):
    if not (5 <= args.n_min <= args.n_max):
        raise UsageError("need 5 <= --n-min <= --n-max")
    rows_data = bootstrap.bound_table(args.n_min, args.n_max, args.mode, precision)
    rows = []
    for r in rows_data:
        rows.append({
            "n": r.n,
            "bound_316": interval_obj(r.bound_316),
            "bound_refined": interval_obj(r.bound_refined),
            "bound_final": interval_obj(r.bound_final),
            "branch": r.branch,
            "upper_branch": interval_obj(r.upper_branch),
        })
    return EXIT_OK, rows, {"mode": args.mode, "rows": rows}


def _cmd_falsify(args, precision):
    if not (3 <= args.n_min <= args.n_max):
        raise UsageError("need 3 <= --n-min <= --n-max")
    if args.samples < 1 or args.seed < 0:
        raise UsageError("--samples must be >= 1 and --seed >= 0")
    report = falsifier.campaign(args.n_min, args.n_max, args.samples, args.seed,
                                tol=args.tol)
    payload = report.to_obj()
    rows = payload["claims"]
    return (EXIT_OK if report.ok else EXIT_FAILED), rows, payload


def _cmd_gap(args, precision):
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    if args.samples < 1 or args.seed < 0:
        raise UsageError("--samples must be >= 1 and --seed >= 0")
    import numpy as np
    root = np.random.SeedSequence(args.seed)
    values = []
    for child in root.spawn(args.samples):
        rng = np.random.default_rng(child)
        spec = falsifier.sample_spectrum(args.n, rng)
        tensor = falsifier.sample_gradtensor(spec, rng)
        values.append(falsifier.gap_statistic(spec, tensor, rng)["G"])
    arr = np.array(values)
    payload = {
        "n": args.n,
        "samples": args.samples,
        "seed": args.seed,
        "class": "exploratory",
        "min": f"{arr.min():.6e}",
        "q25": f"{np.quantile(arr, 0.25):.6e}",
        "median": f"{np.median(arr):.6e}",
        "q75": f"{np.quantile(arr, 0.75):.6e}",
        "max": f"{arr.max():.6e}",
        "negative_fraction": f"{float(np.mean(arr < 0)):.6f}",
    }
    return EXIT_OK, [payload], payload


def _acceptance_summary(precision) -> int:
    """One-command reproduction of the published numbers."""
    failures = 0
    undecided = 0

    def line(ok, text):
        nonlocal failures
        print(("PASS" if ok else "FAIL") + "  " + text)
        if not ok:
            failures += 1

    tol = Fraction(1, 10**5)
    for entry in catalog(precision):
        if entry.paper_decimal is None:
            continue
        mid = entry.enclosure.midpoint
        line(abs(mid - entry.paper_decimal) <= tol,
             f"constant {entry.key}: enclosure midpoint matches printed decimal"
             f" {entry.paper_decimal} to 1e-5")

    report = chain.verify_all(precision=precision)
    for r in report.results:
        line(r.verdict == "verified", f"chain {r.name}: {r.anchor} [{r.verdict}]")
        if r.verdict == "undecided":
            undecided += 1

    trace = bootstrap.iterate(Fraction("0.452115"), 6, 7, precision)
    a7 = trace.last
    line(a7.hi <= Fraction("1.878415") and a7.lo >= Fraction("1.87840"),
         f"bootstrap a7 in [{float(a7.lo):.7f}, {float(a7.hi):.7f}],"
         " upper endpoint <= 1.878415")
    fp = bootstrap.fixed_point(Fraction("0.452115"), 6, precision=precision)
    line(Fraction("1.87840") <= fp.lo and fp.hi <= Fraction("1.87842"),
         f"bootstrap fixed point inside [1.87840, 1.87842]")

    rq = derive_refined_quadratic(DyadicInterval.from_fraction(Fraction("1.878415"),
                                                               precision), precision)
    line(rq.lead.lo >= Fraction("2.834850") and rq.lead.hi <= Fraction("2.834852"),
         "refined quadratic lead coefficient inside [2.834850, 2.834852]")
    line(abs(rq.root_low.midpoint - Fraction("0.452115")) <= tol
         and abs(rq.root_high.midpoint - Fraction("1.26876")) <= tol,
         "refined roots match 0.452115 and 1.26876 to 1e-5")
    line(abs(rq.corr.midpoint - Fraction("0.390586")) <= tol,
         "refined correction matches 0.390586 to 1e-5")

    rows = bootstrap.bound_table(5, 6, "paper", precision)
    n5 = rows[0]
    line(n5.branch == "eq316" and n5.bound_316.strictly_greater(n5.bound_refined),
         "n=5 closing comparison: first-pass bound strictly dominates")

    if failures:
        return EXIT_FAILED
    if undecided:
        return EXIT_UNDECIDED
    return EXIT_OK


_COMMANDS = {
    "constants": _cmd_constants,
    "verify": _cmd_verify,
    "bootstrap": _cmd_bootstrap,
    "solve-split": _cmd_solve_split,
    "bound": _cmd_bound,
    "falsify": _cmd_falsify,
    "gap": _cmd_gap,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        precision = _default_precision()
        if args.command is None:
            return _acceptance_summary(precision)
        if getattr(args, "precision", None) is not None:
            if args.precision < 8:
                raise UsageError("--precision must be at least 8 bits")
            precision = args.precision
        code, rows, payload = _COMMANDS[args.command](args, precision)
        if args.format == "json":
            text = canonical_json(payload)
        elif args.format == "csv":
            text = to_csv(rows)
        else:
            text = to_markdown(rows)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (bootstrap.InvalidSplit, bootstrap.InvalidRange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except bootstrap.NoSignChange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except falsifier.HardViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
