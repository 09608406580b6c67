from __future__ import annotations

import logging
import random

import pytest

from fragtour import Mode, arc_greedy, parse_csv, render_table, run_bench
from fragtour.bench import CSV_HEADER, summarize_ms
from fragtour.oracle import random_euclidean_instance


@pytest.fixture(scope="module")
def sym_records():
    inst = random_euclidean_instance(10, seed=3)
    return inst, run_bench(inst, iterations=3, warmup=1)


def test_every_combination_present(sym_records):
    _, records = sym_records
    combos = {(r.mode, r.tracker) for r in records}
    assert combos == {
        (m, t)
        for m in (Mode.DIRECTIONAL, Mode.NON_DIRECTIONAL)
        for t in ("el", "mf", "gt")
    }


def test_statistics_are_ordered(sym_records):
    _, records = sym_records
    for r in records:
        assert r.min_ms <= r.median_ms <= r.max_ms
        assert r.min_ms <= r.mean_ms <= r.max_ms
        assert r.stddev_ms >= 0
        assert r.iterations == 3
        assert r.heuristic == "arc_greedy"


def test_costs_equal_within_mode(sym_records):
    _, records = sym_records
    for mode in (Mode.DIRECTIONAL, Mode.NON_DIRECTIONAL):
        costs = {r.tour_cost for r in records if r.mode is mode}
        assert len(costs) == 1


def test_timing_never_alters_tours(sym_records):
    inst, records = sym_records
    for mode in (Mode.DIRECTIONAL, Mode.NON_DIRECTIONAL):
        untimed = arc_greedy(inst, mode, "gt").cost
        assert all(r.tour_cost == untimed for r in records if r.mode is mode)


def test_single_iteration_degenerate_statistics():
    inst = random_euclidean_instance(8, seed=1)
    records = run_bench(inst, iterations=1, warmup=0, modes=[Mode.DIRECTIONAL])
    for r in records:
        assert r.mean_ms == r.median_ms == r.min_ms == r.max_ms
        assert r.stddev_ms == 0.0


def test_asymmetric_skips_non_directional(caplog):
    from fragtour.oracle import random_asymmetric_instance

    inst = random_asymmetric_instance(8, seed=2)
    with caplog.at_level(logging.WARNING):
        records = run_bench(inst, iterations=1, warmup=0)
    assert {r.mode for r in records} == {Mode.DIRECTIONAL}
    assert len(records) == 3
    assert any("skipping non_directional" in m for m in caplog.messages)


def test_time_tracker_only_matches_costs():
    inst = random_euclidean_instance(9, seed=4)
    records = run_bench(
        inst, iterations=1, warmup=0, time_tracker_only=True, modes=["directional"]
    )
    expected = arc_greedy(inst, "directional", "el").cost
    assert [r.tour_cost for r in records] == [expected] * 3


def test_summary_is_order_independent():
    samples = [5.0, 1.0, 4.0, 2.0, 8.0, 2.0]
    shuffled = samples[:]
    random.Random(0).shuffle(shuffled)
    assert summarize_ms(samples) == summarize_ms(shuffled)


def test_csv_header_and_roundtrip(sym_records):
    _, records = sym_records
    text = render_table(records, layout="csv")
    assert text.splitlines()[0] == CSV_HEADER
    parsed = parse_csv(text)
    assert len(parsed) == len(records)
    for before, after in zip(records, parsed):
        assert after.instance == before.instance
        assert after.mode == before.mode
        assert after.tracker == before.tracker
        assert after.tour_cost == before.tour_cost
        assert after.mean_ms == pytest.approx(before.mean_ms, abs=5e-4)
        assert after.stddev_ms == pytest.approx(before.stddev_ms, abs=5e-4)
    # a second render of the parsed records is byte-identical
    assert render_table(parsed, layout="csv") == text


def test_table_shape_symmetric(sym_records):
    inst, records = sym_records
    other = random_euclidean_instance(8, seed=9)
    records = list(records) + run_bench(other, iterations=1, warmup=0)
    table = render_table(records, layout="table")
    lines = table.splitlines()
    assert len(lines) == 2 + 2  # header, separator, two instance rows
    header = [c.strip() for c in lines[0].strip("|").split("|")]
    assert header == [
        "Instance (ms)",
        "EL dir", "MF dir", "GT dir",
        "EL nondir", "MF nondir", "GT nondir",
    ]


def test_table_shape_asymmetric_only():
    from fragtour.oracle import random_asymmetric_instance

    inst = random_asymmetric_instance(8, seed=2)
    records = run_bench(inst, iterations=1, warmup=0)
    table = render_table(records, layout="table")
    header = [c.strip() for c in table.splitlines()[0].strip("|").split("|")]
    assert header == ["Instance (ms)", "EL dir", "MF dir", "GT dir"]


def test_render_rejects_unknown_layout(sym_records):
    _, records = sym_records
    with pytest.raises(ValueError):
        render_table(records, layout="yaml")
    with pytest.raises(ValueError):
        render_table([], layout="csv")


def test_iterations_must_be_positive():
    inst = random_euclidean_instance(8, seed=0)
    with pytest.raises(ValueError):
        run_bench(inst, iterations=0)


def test_parse_csv_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_csv("nonsense\n1,2,3")
