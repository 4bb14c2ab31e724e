"""Command-line interface: ``nnv tally|compare|simulate|region|monotonicity``.

Exit codes: 0 success, 1 input or validation error, 2 no qualified candidate.
The default output format comes from ``$NNV_FORMAT`` (``table`` if unset).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from . import __version__
from .ballot import LENIENT, STRICT, TALLY_FIELDS, aggregate, load_election
from .errors import (
    InvalidElection,
    NoQualifiedCandidate,
    NonAdmissibleMetric,
    NormViolation,
    TiedScores,
)
from .metrics import parse_metric, pick_winner, region_curve, w
from .montecarlo import (
    TABLE1_M,
    TABLE1_METRICS,
    monotonicity_search,
    parse_distribution,
    sweep_rows,
    table_sweep,
)
from .ranked import DEFAULT_COMPARE_METRICS, compare_methods
from .satisfaction import S, SBAR, max_satisfaction_winner, variant_values
from .selection import LOWEST_INDEX, REPORT

FORMATS = ("json", "csv", "table")
EXIT_OK, EXIT_INPUT, EXIT_NO_QUALIFIED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _metric_arg(text):
    try:
        return parse_metric(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dist_arg(text):
    try:
        return parse_distribution(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _metric_list(text):
    return [_metric_arg(t) for t in text.split(";") if t.strip()]


# --------------------------------------------------------------------------
# number formatting


def _num(x, digits):
    """Text for one number: fixed ``digits`` decimals, or full precision when None."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return repr(x) if digits is None else f"{x:.{digits}f}"


def _jsonable(x):
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return None if math.isinf(x) or math.isnan(x) else x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def _csv_text(header, rows, digits) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else _num(v, digits) for v in row])
    return buf.getvalue()


def _table_text(header, rows, digits) -> str:
    cells = [[v if isinstance(v, str) else _num(v, digits) for v in row] for row in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in cells)) if cells else len(str(h))
              for i, h in enumerate(header)]
    lines = ["  ".join(str(h).rjust(wd) for h, wd in zip(header, widths))]
    lines += ["  ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _outcome_text(outcome) -> str:
    if isinstance(outcome, list):
        return "tie {" + ", ".join(outcome) + "}"
    return str(outcome)


# --------------------------------------------------------------------------
# commands


def _load(args):
    return load_election(args.file, mode=LENIENT if args.lenient else STRICT)


def cmd_tally(args, out) -> int:
    election = _load(args)
    tally = aggregate(election)
    metrics = args.metric or [w(1, 1)]
    extra = {k.label: np.asarray(k(tally.P, tally.N), dtype=float) for k in metrics}
    if args.satisfaction or args.sbar:
        extra[S] = variant_values(tally, S)
    if args.sbar:
        extra[SBAR] = variant_values(tally, SBAR)

    winners, no_qualified = {}, False
    for kind in metrics:
        try:
            winners[kind.label] = pick_winner(tally, kind, args.tie_rule).outcome()
        except NoQualifiedCandidate:
            winners[kind.label], no_qualified = None, True
    if args.satisfaction or args.sbar:
        for variant in [S] + ([SBAR] if args.sbar else []):
            try:
                winners[variant] = max_satisfaction_winner(tally, variant, args.tie_rule).outcome()
            except NoQualifiedCandidate:
                winners[variant], no_qualified = None, True

    base_rows = tally.rows()
    header = list(TALLY_FIELDS) + list(extra)
    rows = []
    for i, r in enumerate(base_rows):
        pol = math.inf if r["polarity"] is None else r["polarity"]
        rows.append([r["name"], r["P"], r["N"], r["popularity"], pol, r["qualified"],
                     *(float(v[i]) for v in extra.values())])

    if args.format == "json":
        doc = {
            "candidates": [
                {**r, **{k: _jsonable(v[i]) for k, v in extra.items()}}
                for i, r in enumerate(base_rows)
            ],
            "winners": winners,
        }
        out.write(_dump_json(doc) + "\n")
    elif args.format == "csv":
        out.write(_csv_text(header, rows, args.digits))
    else:
        digits = 2 if args.digits is None else args.digits
        out.write(_table_text(header, rows, digits))
        for label, outcome in winners.items():
            shown = "none (no qualified candidate)" if outcome is None else _outcome_text(outcome)
            out.write(f"winner [{label}]: {shown}\n")
    if no_qualified:
        print("error: no qualified candidate (every polarity exceeds 1)", file=sys.stderr)
        return EXIT_NO_QUALIFIED
    return EXIT_OK


def cmd_compare(args, out) -> int:
    election = _load(args)
    try:
        report = compare_methods(election, args.metric or DEFAULT_COMPARE_METRICS)
    except TiedScores as exc:
        a, b = (election.candidates[i] for i in exc.pair)
        raise UsageError(f"voter {exc.voter}: candidates {a} and {b} have equal scores; "
                         "ranks are undefined") from None
    if args.format == "json":
        out.write(_dump_json(report.to_dict()) + "\n")
    elif args.format == "csv":
        rows = [[k, _outcome_text(v)] for k, v in report.outcomes.items()]
        rows.append(["divergent", "yes" if report.divergent else "no"])
        out.write(_csv_text(["method", "winner"], rows, None))
    else:
        out.write(report.to_table() + "\n")
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    metrics = args.metrics if args.metrics is not None else list(TABLE1_METRICS)
    # The reference metric set is run as published even where a metric is
    # outside the admissible region for small m (W_2^1 at m = 3).
    force = args.force or args.metrics is None
    try:
        reports = table_sweep(args.m, args.trials, args.seed, metrics, args.variant,
                              args.dist, force=force, workers=args.workers)
    except NonAdmissibleMetric as exc:
        raise UsageError(f"{exc}; pass --force to run anyway") from None
    if args.format == "json":
        doc = {"seed": args.seed, "trials": args.trials, "variant": args.variant,
               "distribution": str(args.dist), "reports": [r.to_dict() for r in reports]}
        out.write(_dump_json(doc) + "\n")
        return EXIT_OK
    header, rows = sweep_rows(reports)
    if args.format == "csv":
        out.write(_csv_text(header, rows, args.digits))
    else:
        digits = 4 if args.digits is None else args.digits
        out.write(_table_text(header, rows, digits))
    return EXIT_OK


def cmd_region(args, out) -> int:
    for m in args.m:
        if m < 2:
            raise UsageError(f"--m values must be >= 2, got {m}")
    if not 0 < args.c_step <= 1:
        raise UsageError("--c-step must lie in (0, 1]")
    rows = [row for m in args.m for row in region_curve(m, args.c_step, args.tol)]
    header = ["m", "c", "b_max"]
    if args.format == "json":
        out.write(_dump_json([dict(zip(header, r)) for r in rows]) + "\n")
    elif args.format == "csv":
        out.write(_csv_text(header, rows, args.digits))
    else:
        digits = 4 if args.digits is None else args.digits
        out.write(_table_text(header, rows, digits))
    return EXIT_OK


def cmd_monotonicity(args, out) -> int:
    found = monotonicity_search(args.c, args.b, args.m_candidates, args.trials, args.seed)
    if found is None:
        doc = {"found": False, "trials": args.trials}
    else:
        doc = {"found": True, "verified": found.verify(), **found.to_dict()}
    out.write(_dump_json(doc) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get("NNV_FORMAT", "table")
    if default_format not in FORMATS:
        default_format = "table"

    parser = _Parser(prog="nnv", description="Normed negative voting tools.")
    parser.add_argument("--version", action="version", version=f"nnv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(p):
        p.add_argument("--format", choices=FORMATS, default=default_format)
        p.add_argument("--digits", type=int, default=None,
                       help="decimals for table/csv output "
                            "(table default 2 or 4; csv default full precision)")

    metric_help = ("metric: w:<b>,<c> for W_b^c (subscript b = polarity penalty "
                   "FIRST, then c = negative-vote weight), or exp, sqsum, power")

    p = sub.add_parser("tally", help="aggregate an election file and pick winners")
    p.add_argument("file")
    p.add_argument("--metric", action="append", type=_metric_arg, help=metric_help)
    p.add_argument("--satisfaction", action="store_true", help="add the S column")
    p.add_argument("--sbar", action="store_true", help="add S and SBar columns")
    p.add_argument("--lenient", action="store_true",
                   help="accept ballots whose magnitudes miss the norm")
    p.add_argument("--tie-rule", choices=(REPORT, LOWEST_INDEX), default=REPORT)
    output_flags(p)
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("compare", help="winners under ranked methods and NNV")
    p.add_argument("file")
    p.add_argument("--metric", action="append", type=_metric_arg, help=metric_help)
    p.add_argument("--lenient", action="store_true")
    output_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="metric vs voter-satisfaction agreement rates")
    p.add_argument("--m", type=int, nargs="+", default=list(TABLE1_M))
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metrics", type=_metric_list, default=None,
                   help="';'-separated metric list, e.g. 'w:0,1;w:1,1'")
    p.add_argument("--variant", choices=(S, SBAR), type=_variant_arg, default=S)
    p.add_argument("--dist", type=_dist_arg, default=parse_distribution("uniform"),
                   help="uniform[:LOW,HIGH] or integer[:LOW,HIGH]")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--force", action="store_true", help="allow non-admissible metrics")
    output_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("region", help="maximal-penalty boundary b_max(c) per m")
    p.add_argument("--m", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--c-step", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=1e-6)
    output_flags(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("monotonicity", help="search for a monotonicity counterexample")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--m", dest="m_candidates", type=int, default=3)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_monotonicity)
    return parser


def _variant_arg(text):
    return {"s": S, "sbar": SBAR}.get(text.lower(), text)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _warn_to_stderr
            return args.func(args, out)
    except json.JSONDecodeError as exc:
        print(f"error: {args.file}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
    except NormViolation as exc:
        print(f"error: {exc} (use --lenient to accept)", file=sys.stderr)
    except (InvalidElection, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


def _warn_to_stderr(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
