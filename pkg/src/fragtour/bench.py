"""Timing harness for the construction heuristics.

Each (mode, tracker) combination is run ``warmup`` times untimed and then
``iterations`` times on the monotonic clock, producing one summary record.
By default each timed run includes building and sorting the candidate
stream; ``time_tracker_only`` pre-sorts once and times only the
legality/commit loop plus closure, which isolates the part the trackers
actually differ on.  Absolute times are machine-specific; the records are
for relative comparison on one box.
"""

from __future__ import annotations

import logging
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .edges import Mode, build_sorted_edges
from .heuristics import _drive, arc_greedy, assemble_order
from .instances import Instance, tour_cost
from .trackers import TRACKER_KINDS, make_tracker

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "instance,n,mode,tracker,heuristic,iterations,"
    "mean_ms,median_ms,min_ms,max_ms,stddev_ms,tour_cost"
)

LAYOUTS = ("table", "csv")


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    n: int
    mode: Mode
    tracker: str
    heuristic: str
    iterations: int
    mean_ms: float
    median_ms: float
    min_ms: float
    max_ms: float
    stddev_ms: float
    tour_cost: int


def summarize_ms(samples_ms: Sequence[float]) -> tuple[float, float, float, float, float]:
    """(mean, median, min, max, population stddev) of a timing sample."""
    return (
        statistics.fmean(samples_ms),
        statistics.median(samples_ms),
        min(samples_ms),
        max(samples_ms),
        statistics.pstdev(samples_ms),
    )


def run_bench(
    inst: Instance,
    *,
    modes: Iterable[Mode | str] | None = None,
    trackers: Iterable[str] = TRACKER_KINDS,
    iterations: int = 100,
    warmup: int = 5,
    time_tracker_only: bool = False,
    row_col_delete: bool = True,
) -> list[BenchRecord]:
    """Timed arc-greedy runs for every requested (mode, tracker) pair.

    Incompatible mode/instance pairs are skipped with a logged notice.
    Runs are strictly sequential; nothing here mutates the instance.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if modes is None:
        mode_list = [Mode.DIRECTIONAL, Mode.NON_DIRECTIONAL]
    else:
        mode_list = [Mode(m) for m in modes]
    records: list[BenchRecord] = []
    for mode in mode_list:
        if mode is Mode.NON_DIRECTIONAL and not inst.is_symmetric:
            logger.warning(
                "skipping non_directional on asymmetric instance %s", inst.name
            )
            continue
        presorted = build_sorted_edges(inst, mode) if time_tracker_only else None
        for tracker in trackers:
            samples: list[float] = []
            cost: int | None = None
            for run in range(warmup + iterations):
                start = time.perf_counter_ns()
                if presorted is None:
                    tour = arc_greedy(
                        inst, mode, tracker, row_col_delete=row_col_delete
                    )
                    elapsed = time.perf_counter_ns() - start
                    run_cost = tour.cost
                else:
                    state = make_tracker(
                        tracker, inst, mode, row_col_delete=row_col_delete
                    )
                    committed = _drive(state, presorted)
                    order = assemble_order(inst.n, committed, mode)
                    elapsed = time.perf_counter_ns() - start
                    run_cost = tour_cost(inst, order)
                if run >= warmup:
                    samples.append(elapsed / 1e6)
                cost = run_cost
            assert cost is not None
            mean, median, mn, mx, std = summarize_ms(samples)
            records.append(
                BenchRecord(
                    instance=inst.name,
                    n=inst.n,
                    mode=mode,
                    tracker=tracker,
                    heuristic="arc_greedy",
                    iterations=iterations,
                    mean_ms=mean,
                    median_ms=median,
                    min_ms=mn,
                    max_ms=mx,
                    stddev_ms=std,
                    tour_cost=cost,
                )
            )
    return records


def render_table(records: Sequence[BenchRecord], layout: str = "table") -> str:
    """Render records as a grouped markdown table or as CSV.

    The table layout has one row per instance and one mean-time column per
    (mode, tracker); a mode block only appears when some record uses it,
    so asymmetric-only records produce a directional-only table.
    """
    if not records:
        raise ValueError("no records to render")
    if layout == "csv":
        return _render_csv(records)
    if layout != "table":
        raise ValueError(f"unknown layout {layout!r} (expected 'table' or 'csv')")
    return _render_grouped(records)


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _render_csv(records: Sequence[BenchRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    r.instance,
                    str(r.n),
                    r.mode.value,
                    r.tracker,
                    r.heuristic,
                    str(r.iterations),
                    _fmt(r.mean_ms),
                    _fmt(r.median_ms),
                    _fmt(r.min_ms),
                    _fmt(r.max_ms),
                    _fmt(r.stddev_ms),
                    str(r.tour_cost),
                ]
            )
        )
    return "\n".join(lines)


def parse_csv(text: str) -> list[BenchRecord]:
    """Inverse of the csv layout (floats at 3 decimals)."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    records = []
    for line in lines[1:]:
        f = line.split(",")
        if len(f) != 12:
            raise ValueError(f"malformed CSV row: {line!r}")
        records.append(
            BenchRecord(
                instance=f[0],
                n=int(f[1]),
                mode=Mode(f[2]),
                tracker=f[3],
                heuristic=f[4],
                iterations=int(f[5]),
                mean_ms=float(f[6]),
                median_ms=float(f[7]),
                min_ms=float(f[8]),
                max_ms=float(f[9]),
                stddev_ms=float(f[10]),
                tour_cost=int(f[11]),
            )
        )
    return records


_MODE_LABEL = {Mode.DIRECTIONAL: "dir", Mode.NON_DIRECTIONAL: "nondir"}


def _render_grouped(records: Sequence[BenchRecord]) -> str:
    modes = [
        m
        for m in (Mode.DIRECTIONAL, Mode.NON_DIRECTIONAL)
        if any(r.mode is m for r in records)
    ]
    trackers = ("el", "mf", "gt")
    by_cell = {(r.instance, r.mode, r.tracker): r for r in records}
    instances = list(dict.fromkeys(r.instance for r in records))

    header = ["Instance (ms)"]
    for mode in modes:
        header += [f"{t.upper()} {_MODE_LABEL[mode]}" for t in trackers]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for name in instances:
        row = [name]
        for mode in modes:
            for t in trackers:
                rec = by_cell.get((name, mode, t))
                row.append(_fmt(rec.mean_ms) if rec is not None else "-")
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines)
