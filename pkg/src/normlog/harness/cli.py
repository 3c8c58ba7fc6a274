"""Command-line interface.

Subcommands::

    generate --family F --n N --seed S --out pair.json
    check    --name CHECK --in pair.json [--k-lo K --k-hi K] [--tol T]
             [--report out.json]
    suite    [--config suite.json] [--report out.json] [--jobs J]
    version

Exit codes: 0 all pass (hypothesis-skipped checks do not fail a run),
1 any check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .. import __version__
from ..config import DEFAULT_TOL
from ..errors import NormLogError
from .generators import Family, InstanceSpec, make_pair
from .io import read_pair, write_pair, write_report
from .suite import default_config, run_check, run_suite

CHECK_NAMES = (
    "real_part", "spectral_agreement", "modulus_equal", "modulus_commute",
    "square_commute", "corollary_cases", "difference_formula",
    "congruence_free", "double_commutant", "one_boundary_eigenvalue",
    "y_in_bicommutant_of_exp", "kurepa",
)


def _parse_params(items):
    params = {}
    for item in items or []:
        key, _, raw = item.partition("=")
        if not _:
            raise ValueError(f"expected key=value, got {item!r}")
        try:
            value = int(raw)
        except ValueError:
            value = float(raw)
        params[key] = value
    return params


def _cmd_generate(args) -> int:
    spec = InstanceSpec(family=Family(args.family), n=args.n, seed=args.seed,
                        params=_parse_params(args.param))
    x, y, metadata = make_pair(spec)
    write_pair(args.out, x, y, metadata)
    print(f"wrote {args.family} n={args.n} seed={args.seed} -> {args.out}")
    return 0


def _cmd_check(args) -> int:
    x, y, metadata = read_pair(args.infile)
    if args.k_lo is not None:
        metadata["k_lo"] = args.k_lo
    if args.k_hi is not None:
        metadata["k_hi"] = args.k_hi
    tol = DEFAULT_TOL if args.tol is None else DEFAULT_TOL.replace(check=args.tol)
    report = run_check(args.name, x, y, metadata, tol)

    status = "PASS" if report.passed else (
        "SKIP" if not report.hypothesis_met else "FAIL")
    worst = max(report.residuals.values(), default=0.0)
    print(f"[{status}] {report.check_name}  worst residual {worst:.3e}"
          + (f"  ({report.notes})" if report.notes else ""))
    if args.report:
        row = {"family": metadata.get("family", "file"),
               "n": metadata.get("n"), "seed": metadata.get("seed")}
        row.update(report.to_dict())
        write_report(args.report, {
            "suite": "normlog-check",
            "config": {"name": args.name, "input": args.infile},
            "results": [row],
            "summary": {"total": 1, "passed": int(report.passed),
                        "skipped_hypothesis": int(not report.hypothesis_met),
                        "failed": int(report.hypothesis_met
                                      and not report.passed)},
        })
    return 1 if (report.hypothesis_met and not report.passed) else 0


def _cmd_suite(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    else:
        config = default_config()
    report = run_suite(config, jobs=args.jobs)
    summary = report["summary"]
    for row in report["results"]:
        if row["hypothesis_met"] and not row["passed"]:
            worst = max(row["residuals"].values(), default=0.0)
            print(f"[FAIL] {row['check']} {row['family']} n={row['n']} "
                  f"seed={row['seed']} worst residual {worst:.3e}")
    print(f"total {summary['total']}  passed {summary['passed']}  "
          f"skipped {summary['skipped_hypothesis']}  "
          f"failed {summary['failed']}")
    if args.report:
        write_report(args.report, report)
    return 0 if summary["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normlog",
        description="spectral toolkit for normal-matrix logarithms")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write an instance pair file")
    gen.add_argument("--family", required=True,
                     choices=[f.value for f in Family])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--param", action="append", metavar="KEY=VALUE",
                     help="family-specific scalar (repeatable)")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_generate)

    chk = sub.add_parser("check", help="run one check on a pair file")
    chk.add_argument("--name", required=True, choices=CHECK_NAMES)
    chk.add_argument("--in", dest="infile", required=True)
    chk.add_argument("--k-lo", type=int, default=None)
    chk.add_argument("--k-hi", type=int, default=None)
    chk.add_argument("--tol", type=float, default=None,
                     help="override the pass/fail threshold")
    chk.add_argument("--report", default=None)
    chk.set_defaults(func=_cmd_check)

    ste = sub.add_parser("suite", help="run the full verification suite")
    ste.add_argument("--config", default=None)
    ste.add_argument("--report", default=None)
    ste.add_argument("--jobs", type=int, default=1)
    ste.set_defaults(func=_cmd_suite)

    ver = sub.add_parser("version", help="print the package version")
    ver.set_defaults(func=lambda args: print(__version__) or 0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError,
            NormLogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
