"""Command-line front end.

Subcommands:

* ``solve``  -- construct one tour for one instance and print it
* ``bench``  -- timed construction runs, CSV or grouped table output
* ``verify`` -- cross-tracker tour identity checks, nonzero exit on divergence
* ``oracle`` -- randomized brute-force comparisons, nonzero exit on violation

Node numbering in all output is 1-based, matching TSPLIB files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bench import render_table, run_bench
from .edges import Arc, Mode, ModeError, default_mode
from .heuristics import (
    InfeasibleOrderError,
    arc_greedy,
    distance_sum_order,
    double_ended_nn,
    identity_order,
    nearest_neighbor,
    ordered_greedy,
    random_order,
    tour_to_record,
    tour_to_text,
)
from .instances import Instance, InvalidTourError, ParseError, load_instance
from .oracle import (
    BRUTE_FORCE_MAX_N,
    brute_force_optimal,
    random_asymmetric_instance,
    random_euclidean_instance,
    validate_tour,
    verify_equivalence,
)
from .trackers import Verdict

_MODES = {"dir": Mode.DIRECTIONAL, "nondir": Mode.NON_DIRECTIONAL}


class CliError(Exception):
    """User-facing error; message is printed and the exit status is 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fragtour",
        description="Greedy fragment tour construction for TSPLIB instances.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="construct a tour for one instance")
    solve.add_argument("file", type=Path)
    solve.add_argument(
        "--heuristic",
        choices=("arc-greedy", "nn", "denn", "og"),
        default="arc-greedy",
    )
    solve.add_argument("--tracker", choices=("mf", "el", "gt"), default="gt")
    solve.add_argument(
        "--mode",
        choices=sorted(_MODES),
        help="default: nondir for symmetric instances, dir for asymmetric",
    )
    solve.add_argument("--start", type=int, default=1, help="start node for nn/denn (1-based)")
    solve.add_argument(
        "--order",
        help="og priority list: identity | distance-sum | random:<seed> | file:<path>",
    )
    solve.add_argument("--no-row-col-delete", action="store_true")
    solve.add_argument("--json", action="store_true", help="emit a structured record")
    solve.add_argument(
        "--trace", action="store_true", help="emit per-arc verdict lines to stderr"
    )

    bench = sub.add_parser("bench", help="timed construction runs")
    bench.add_argument("files", nargs="+", type=Path)
    bench.add_argument("--iterations", type=int, default=100)
    bench.add_argument("--warmup", type=int, default=5)
    bench.add_argument("--format", choices=("table", "csv"), default="table")
    bench.add_argument("--mode", choices=sorted(_MODES), help="default: both valid modes")
    bench.add_argument(
        "--time-tracker-only",
        action="store_true",
        help="time only the legality/commit loop on a pre-sorted stream",
    )
    bench.add_argument("--no-row-col-delete", action="store_true")
    bench.add_argument("--out", type=Path, help="write output to a file instead of stdout")

    verify = sub.add_parser("verify", help="cross-tracker tour identity checks")
    verify.add_argument("files", nargs="+", type=Path)

    oracle = sub.add_parser("oracle", help="randomized brute-force comparisons")
    oracle.add_argument("--n", type=int, default=8, help=f"nodes per instance (<= {BRUTE_FORCE_MAX_N})")
    oracle.add_argument("--seeds", type=int, default=20, help="number of seeds to run")
    return parser


def _load(path: Path) -> Instance:
    if not path.exists():
        raise CliError(f"no such file: {path}")
    try:
        return load_instance(path)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _resolve_order(spec: str, inst: Instance) -> list[int]:
    if spec == "identity":
        return identity_order(inst.n)
    if spec == "distance-sum":
        return distance_sum_order(inst)
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise CliError(f"bad seed in order spec {spec!r}") from None
        return random_order(inst.n, seed)
    if spec.startswith("file:"):
        path = Path(spec.split(":", 1)[1])
        if not path.exists():
            raise CliError(f"no such order file: {path}")
        nodes = [int(tok) - 1 for tok in path.read_text().split()]
        return nodes
    raise CliError(
        f"bad order spec {spec!r} "
        "(expected identity | distance-sum | random:<seed> | file:<path>)"
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args.file)
    mode = _MODES[args.mode] if args.mode else None
    row_col_delete = not args.no_row_col_delete
    on_verdict = None
    if args.trace:

        def on_verdict(iteration: int, arc: Arc, verdict: Verdict) -> None:
            status = "accept" if verdict.accepted else f"reject {verdict.reason}"
            print(
                f"{iteration} {arc.tail + 1} {arc.head + 1} {arc.weight} {status}",
                file=sys.stderr,
            )

    try:
        if args.heuristic == "arc-greedy":
            tour = arc_greedy(
                inst,
                mode or default_mode(inst),
                args.tracker,
                row_col_delete=row_col_delete,
                on_verdict=on_verdict,
            )
        elif args.heuristic == "nn":
            tour = nearest_neighbor(inst, _start_index(args.start, inst))
        elif args.heuristic == "denn":
            tour = double_ended_nn(inst, _start_index(args.start, inst))
        else:  # og
            if not args.order:
                raise CliError("--order is required with --heuristic og")
            order = _resolve_order(args.order, inst)
            tour = ordered_greedy(
                inst,
                mode or default_mode(inst),
                order,
                args.tracker,
                row_col_delete=row_col_delete,
            )
    except (ModeError, InfeasibleOrderError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        print(json.dumps(tour_to_record(tour, inst.name), sort_keys=True))
    else:
        print(tour_to_text(tour, inst.name))
    return 0


def _start_index(start: int, inst: Instance) -> int:
    # --start is 1-based like all CLI node numbering
    if not 1 <= start <= inst.n:
        raise CliError(f"start node {start} outside 1..{inst.n}")
    return start - 1


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.iterations < 1:
        raise CliError("--iterations must be at least 1")
    records = []
    for path in args.files:
        inst = _load(path)
        records.extend(
            run_bench(
                inst,
                modes=[_MODES[args.mode]] if args.mode else None,
                iterations=args.iterations,
                warmup=args.warmup,
                time_tracker_only=args.time_tracker_only,
                row_col_delete=not args.no_row_col_delete,
            )
        )
    if not records:
        raise CliError("no (instance, mode) combination was runnable")
    text = render_table(records, layout=args.format)
    if args.out:
        args.out.write_text(text + "\n")
    else:
        print(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    status = 0
    for path in args.files:
        inst = _load(path)
        modes = [Mode.DIRECTIONAL]
        if inst.is_symmetric:
            modes.append(Mode.NON_DIRECTIONAL)
        for mode in modes:
            report = verify_equivalence(inst, mode)
            print(report.to_text())
            print()
            if not report.tours_identical:
                status = 1
    return status


def _cmd_oracle(args: argparse.Namespace) -> int:
    if args.n > BRUTE_FORCE_MAX_N:
        raise CliError(f"--n must be at most {BRUTE_FORCE_MAX_N}")
    if args.n < 3:
        raise CliError("--n must be at least 3")
    violations = 0
    checked = 0
    for seed in range(args.seeds):
        for inst in (
            random_euclidean_instance(args.n, seed),
            random_asymmetric_instance(args.n, seed),
        ):
            optimal = brute_force_optimal(inst)
            for label, tour in _oracle_tours(inst):
                checked += 1
                problem = validate_tour(inst, tour)
                if problem is not None:
                    violations += 1
                    print(f"INVALID {inst.name} {label}: {problem}")
                elif tour.cost < optimal.cost:
                    violations += 1
                    print(
                        f"BEATS-OPTIMAL {inst.name} {label}: "
                        f"{tour.cost} < {optimal.cost}"
                    )
    print(f"oracle: {checked} tours checked, {violations} violations")
    return 1 if violations else 0


def _oracle_tours(inst: Instance):
    modes = [Mode.DIRECTIONAL] + (
        [Mode.NON_DIRECTIONAL] if inst.is_symmetric else []
    )
    for mode in modes:
        for tracker in ("el", "mf", "gt"):
            yield f"arc-greedy/{tracker}/{mode.value}", arc_greedy(inst, mode, tracker)
    for start in range(inst.n):
        yield f"nn/start={start + 1}", nearest_neighbor(inst, start)
        if inst.is_symmetric:
            yield f"denn/start={start + 1}", double_ended_nn(inst, start)
    orders = [("identity", identity_order(inst.n)), ("distance-sum", distance_sum_order(inst))]
    orders += [(f"random:{s}", random_order(inst.n, s)) for s in range(5)]
    for mode in modes:
        for label, order in orders:
            try:
                yield f"og/{label}/{mode.value}", ordered_greedy(inst, mode, order)
            except InfeasibleOrderError:
                continue  # a declared dead-end is a legal outcome, not a tour


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {
        "solve": _cmd_solve,
        "bench": _cmd_bench,
        "verify": _cmd_verify,
        "oracle": _cmd_oracle,
    }[args.command]
    try:
        return handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ModeError, InvalidTourError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
