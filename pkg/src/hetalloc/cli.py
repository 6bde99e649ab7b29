"""Command-line interface.

Three subcommands: ``run`` simulates a scenario and renders the
per-user report, ``validate`` checks a scenario file and prints OK,
``compare`` runs several allocators on one scenario side by side.
Domain failures print a single ``ErrorClass: message`` line on stderr
and exit nonzero.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import SimulationRun, run, summarize
from .errors import DomainError, HetAllocError
from .report import emit_report
from .scenario import ALLOCATORS, load_scenario


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetalloc",
        description="Simulate radio resource allocation across a heterogeneous network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="simulate a scenario and print the report")
    run_p.add_argument("--scenario", required=True, help="scenario file path")
    run_p.add_argument(
        "--allocator", choices=ALLOCATORS, help="override the scenario's allocator"
    )
    run_p.add_argument("--steps", type=int, help="override the scenario's horizon")
    run_p.add_argument("--seed", type=int, help="override the scenario's seed")
    run_p.add_argument("--output", help="write the report here instead of stdout")
    run_p.add_argument(
        "--format", choices=("table", "csv"), default="table", help="report format"
    )
    run_p.set_defaults(func=_cmd_run)

    val_p = sub.add_parser("validate", help="check a scenario file and report problems")
    val_p.add_argument("--scenario", required=True, help="scenario file path")
    val_p.set_defaults(func=_cmd_validate)

    cmp_p = sub.add_parser("compare", help="run several allocators on one scenario")
    cmp_p.add_argument("--scenario", required=True, help="scenario file path")
    cmp_p.add_argument(
        "--allocators",
        required=True,
        help="comma-separated allocator names, e.g. dp,round_robin,maxmin",
    )
    cmp_p.set_defaults(func=_cmd_compare)
    return parser


def _cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    sim = SimulationRun.from_scenario(
        scenario, allocator=args.allocator, horizon=args.steps, seed=args.seed
    )
    summary = summarize(run(sim))
    text = emit_report(summary, scenario, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args) -> int:
    load_scenario(args.scenario)
    print(f"{args.scenario}: OK")
    return 0


def _cmd_compare(args) -> int:
    scenario = load_scenario(args.scenario)
    names = [name.strip() for name in args.allocators.split(",") if name.strip()]
    if not names:
        raise DomainError("no allocator names given")
    rows = []
    for name in names:
        sim = SimulationRun.from_scenario(scenario, allocator=name)
        summary = summarize(run(sim))
        rows.append(
            (
                name,
                f"{summary.total_bits:.6g}",
                f"{sum(summary.per_user_units.values()):.6g}",
                str(summary.blocking_events),
            )
        )
    header = ("allocator", "total_bits", "total_units", "blocking_events")
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))]
    print("  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip())
    for row in rows:
        print("  ".join(row[i].ljust(widths[i]) for i in range(len(header))).rstrip())
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HetAllocError as exc:
        message = " ".join(str(exc).split())
        print(f"{type(exc).__name__}: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
