"""Command-line front end: simulate, validate, and explain scenarios."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .errors import NetmanError, ParseError, ValidationError
from .report import compare, emit_csv, format_table, kilobytes
from .simulation import (
    MODEL_NAMES,
    Scenario,
    SimulationResult,
    load_bundled_scenario,
    load_scenario_file,
    run,
)

__all__ = ["main"]


def _load(argument: str) -> Scenario:
    """Treat the argument as a file path, falling back to bundled names."""
    if os.path.exists(argument):
        return load_scenario_file(argument)
    if os.sep not in argument:
        return load_bundled_scenario(argument)
    raise FileNotFoundError(f"no such scenario file: {argument}")


def _parse_models(text: str) -> tuple[str, ...]:
    models = tuple(part.strip() for part in text.split(",") if part.strip())
    if not models:
        raise ValidationError("--models", "expected a comma-separated model list")
    for model in models:
        if model not in MODEL_NAMES:
            raise ValidationError(
                "--models", f"unknown model {model!r} (choose from {MODEL_NAMES})"
            )
    if len(set(models)) != len(models):
        raise ValidationError("--models", "duplicate model")
    return models


def _parse_pollings(text: str) -> tuple[int, ...]:
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise ValidationError("--pollings", "expected a comma-separated count list")
    counts = []
    for part in parts:
        try:
            count = int(part, 10)
        except ValueError:
            raise ValidationError("--pollings", f"not an integer: {part!r}") from None
        if count < 0:
            raise ValidationError("--pollings", f"must be non-negative: {count}")
        counts.append(count)
    return tuple(counts)


def _tree_lines(result: SimulationResult) -> list[str]:
    by_id = {state.id: state for state in result.final_domains}
    lines = []

    def walk(state, depth: int) -> None:
        members = ", ".join(str(m) for m in state.members)
        lines.append(
            f"{'  ' * depth}{state.id}  host={state.manager_host}  "
            f"members=[{members}]"
        )
        for child in state.children:
            walk(by_id[child], depth + 1)

    for state in result.final_domains:
        if state.parent is None:
            walk(state, 0)
    return lines


def _print_snapshots(result: SimulationResult) -> None:
    for record in result.snapshots:
        print(f"snapshot {record.label}: managers {', '.join(record.managers)}")
        if record.costs:
            for model, breakdown in record.costs:
                print(
                    f"  {model}: per-poll {float(breakdown.per_poll):g} bytes"
                    f" ({kilobytes(breakdown.per_poll)} Kb)"
                )


def _cmd_simulate(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    models = _parse_models(args.models) if args.models is not None else None
    pollings = (
        _parse_pollings(args.pollings) if args.pollings is not None else None
    )
    result = run(
        scenario,
        models=models,
        polling_counts=pollings,
        costs_at_snapshots=args.snapshots,
    )
    if args.snapshots:
        _print_snapshots(result)
    if not result.models:
        print(f"scenario: {result.scenario} (no cost models requested)")
        for line in _tree_lines(result):
            print(line)
        return 0
    report = compare(result, include_deploy=args.include_deploy)
    print(format_table(report))
    if args.csv:
        with open(args.csv, "wb") as sink:
            emit_csv(report, sink)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    print(
        f"ok: {scenario.name} ({len(scenario.nodes)} initial nodes, "
        f"{len(scenario.events)} events, models: "
        f"{', '.join(scenario.models) if scenario.models else 'none'})"
    )
    return 0


def _cmd_explain(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    result = run(scenario, models=(), polling_counts=())
    print(f"scenario: {scenario.name}")
    for line in _tree_lines(result):
        print(line)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netmansim",
        description=(
            "Simulate hierarchical mobile-agent network management and "
            "compare its traffic cost with centralized polling and a "
            "flat-bed agent sweep."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate", help="run a scenario and print its cost table"
    )
    simulate.add_argument(
        "--scenario",
        required=True,
        help="scenario file path, or the name of a bundled scenario",
    )
    simulate.add_argument(
        "--models",
        help=f"comma-separated subset of {'/'.join(MODEL_NAMES)}"
        " (default: the scenario's own)",
    )
    simulate.add_argument(
        "--pollings",
        help="comma-separated polling counts (default: the scenario's own)",
    )
    simulate.add_argument("--csv", help="also write the table to this CSV file")
    simulate.add_argument(
        "--include-deploy",
        action="store_true",
        help="add the one-time deployment cost to every hierarchical row",
    )
    simulate.add_argument(
        "--snapshots",
        action="store_true",
        help="print per-snapshot manager sets and costs",
    )
    simulate.set_defaults(handler=_cmd_simulate)

    validate = commands.add_parser(
        "validate", help="parse and check a scenario, reporting problems"
    )
    validate.add_argument("--scenario", required=True, help="scenario file or name")
    validate.set_defaults(handler=_cmd_validate)

    explain = commands.add_parser(
        "explain", help="print the final manager tree of a scenario"
    )
    explain.add_argument("--scenario", required=True, help="scenario file or name")
    explain.set_defaults(handler=_cmd_explain)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point. Returns 0 on success, 1 on bad input, 2 on runtime error."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NetmanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
