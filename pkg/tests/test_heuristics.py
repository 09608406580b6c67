from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fragtour import (
    InfeasibleOrderError,
    Mode,
    ModeError,
    arc_greedy,
    brute_force_optimal,
    canonical_cycle,
    distance_sum_order,
    double_ended_nn,
    identity_order,
    nearest_neighbor,
    ordered_greedy,
    random_order,
    tour_to_record,
    tour_to_text,
    validate_tour,
)
from fragtour.oracle import random_euclidean_instance
from fragtour.trackers import REASON_SUBTOUR

from .conftest import instance_from_rows
from .reference import reference_greedy_cost

TRACKERS = ("mf", "el", "gt")

#: frozen from the reference implementation on the bundled instances
BERLIN52_GREEDY_COST = {"non_directional": 9951, "directional": 9563}
BR17_GREEDY_COST = 97


# -- arc-greedy ----------------------------------------------------------------


@pytest.mark.parametrize("tracker", TRACKERS)
def test_arc_greedy_triangle(tri3, tracker):
    tour = arc_greedy(tri3, Mode.NON_DIRECTIONAL, tracker)
    assert sorted(tour.order) == [0, 1, 2]
    assert tour.cost == 6  # the unique 3-node cycle


def test_arc_greedy_rejects_chain_closure(chain5):
    seen = []
    tour = arc_greedy(
        chain5,
        Mode.NON_DIRECTIONAL,
        "mf",
        on_verdict=lambda k, arc, verdict: seen.append((arc, verdict)),
    )
    accepted = [(a.tail, a.head) for a, v in seen if v.accepted]
    assert accepted[:2] == [(0, 1), (1, 2)]
    rejected = {(a.tail, a.head): v.reason for a, v in seen if not v.accepted}
    assert rejected[(0, 2)] == REASON_SUBTOUR
    assert validate_tour(chain5, tour) is None


@pytest.mark.parametrize("mode", ["non_directional", "directional"])
def test_arc_greedy_berlin52_matches_reference(berlin52, mode):
    tours = [arc_greedy(berlin52, mode, tracker) for tracker in TRACKERS]
    assert len({t.order for t in tours}) == 1  # tracker-independent
    assert tours[0].cost == BERLIN52_GREEDY_COST[mode]
    assert tours[0].cost == reference_greedy_cost(
        berlin52.weights.tolist(), directed=(mode == "directional")
    )


def test_arc_greedy_br17_matches_reference(br17):
    tours = [arc_greedy(br17, "directional", tracker) for tracker in TRACKERS]
    assert len({t.order for t in tours}) == 1
    assert tours[0].cost == BR17_GREEDY_COST
    assert tours[0].cost == reference_greedy_cost(br17.weights.tolist(), directed=True)


def test_arc_greedy_mode_error(br17):
    with pytest.raises(ModeError):
        arc_greedy(br17, Mode.NON_DIRECTIONAL, "gt")


def test_arc_greedy_is_deterministic(berlin52):
    first = arc_greedy(berlin52, "non_directional", "gt")
    second = arc_greedy(berlin52, "non_directional", "gt")
    assert first.order == second.order
    assert first.cost == second.cost


# -- nearest neighbor ------------------------------------------------------------


def test_nn_triangle(tri3):
    tour = nearest_neighbor(tri3, start=0)
    assert tour.order == (0, 1, 2)  # 0's nearest is 1, then forced
    assert tour.cost == 6


@given(seed=st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_nn_visits_every_node_once(seed):
    inst = random_euclidean_instance(4 + seed % 9, seed)
    for start in range(inst.n):
        tour = nearest_neighbor(inst, start)
        assert sorted(tour.order) == list(range(inst.n))
        assert tour.order[0] == start
        assert validate_tour(inst, tour) is None


def test_nn_start_out_of_range(tri3):
    with pytest.raises(ValueError):
        nearest_neighbor(tri3, start=5)


# -- double-ended nearest neighbor ------------------------------------------------


def test_denn_triangle(tri3):
    tour = double_ended_nn(tri3, start=0)
    assert sorted(tour.order) == [0, 1, 2]
    assert tour.cost == 6


def test_denn_from_middle_recovers_line_sweep(collinear5):
    tour = double_ended_nn(collinear5, start=2)
    optimal = brute_force_optimal(collinear5)
    assert tour.cost == optimal.cost == 80


def test_denn_requires_symmetric(br17):
    with pytest.raises(ModeError):
        double_ended_nn(br17, start=0)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_denn_is_valid_everywhere(seed):
    inst = random_euclidean_instance(4 + seed % 9, seed)
    for start in range(inst.n):
        tour = double_ended_nn(inst, start)
        assert validate_tour(inst, tour) is None
        assert tour.order[0] == start


# -- ordered greedy ----------------------------------------------------------------


def test_ordered_greedy_priority5_directional(priority5):
    tour = ordered_greedy(priority5, "directional", order=[3, 4, 2, 1, 0])
    assert tour.order == (0, 3, 4, 1, 2)  # A-D-E-B-C back to A
    assert tour.cost == 11
    optimal = brute_force_optimal(priority5)
    assert optimal.cost == tour.cost
    assert canonical_cycle(optimal.order, True) == canonical_cycle(tour.order, True)


def test_ordered_greedy_priority5_non_directional(priority5):
    # same cycle, but the walk from A leaves toward its smaller neighbor
    tour = ordered_greedy(priority5, "non_directional", order=[3, 4, 2, 1, 0])
    assert tour.cost == 11
    assert canonical_cycle(tour.order, True) == canonical_cycle((0, 3, 4, 1, 2), True)


def test_ordered_greedy_triangle_any_order(tri3):
    for order in itertools.permutations(range(3)):
        tour = ordered_greedy(tri3, "non_directional", order)
        assert tour.cost == 6


def test_ordered_greedy_all_orders_on_four_nodes(square4):
    # every one of the 4! orders either builds a valid tour or declares
    # infeasibility; a silent subtour is never produced
    for mode in (Mode.DIRECTIONAL, Mode.NON_DIRECTIONAL):
        for order in itertools.permutations(range(4)):
            try:
                tour = ordered_greedy(square4, mode, order)
            except InfeasibleOrderError:
                continue
            assert validate_tour(square4, tour) is None


def test_ordered_greedy_directional_never_dead_ends():
    # with arcs oriented, an un-exited node can always reach some
    # un-entered node outside its own fragment
    for seed in range(30):
        inst = random_euclidean_instance(4 + seed % 7, seed)
        for order in (identity_order(inst.n), random_order(inst.n, seed)):
            tour = ordered_greedy(inst, Mode.DIRECTIONAL, order)
            assert validate_tour(inst, tour) is None


def test_ordered_greedy_infeasible_order_surfaces():
    inst = instance_from_rows(
        [
            [0, 5, 1, 7],
            [5, 0, 2, 6],
            [1, 2, 0, 8],
            [7, 6, 8, 0],
        ],
        name="deadend4",
    )
    # nodes 0 and 1 both hook onto node 2, leaving 2 saturated at its turn
    with pytest.raises(InfeasibleOrderError) as excinfo:
        ordered_greedy(inst, Mode.NON_DIRECTIONAL, [0, 1, 2, 3])
    assert excinfo.value.node == 2
    assert excinfo.value.order == (0, 1, 2, 3)
    assert "(0, 1, 2, 3)" in str(excinfo.value)


def test_ordered_greedy_rejects_non_permutation(tri3):
    with pytest.raises(ValueError):
        ordered_greedy(tri3, "non_directional", [0, 0, 2])


@pytest.mark.parametrize("tracker", TRACKERS)
def test_ordered_greedy_tracker_choice_is_irrelevant(priority5, tracker):
    tour = ordered_greedy(priority5, "directional", [3, 4, 2, 1, 0], tracker)
    assert tour.order == (0, 3, 4, 1, 2)


# -- priority list generators -------------------------------------------------------


def test_identity_order():
    assert identity_order(4) == [0, 1, 2, 3]


def test_distance_sum_order(priority5):
    totals = priority5.weights.sum(axis=1).tolist()
    order = distance_sum_order(priority5)
    assert sorted(order) == [0, 1, 2, 3, 4]
    assert [totals[v] for v in order] == sorted(totals)


def test_random_order_is_seeded():
    assert random_order(10, 42) == random_order(10, 42)
    assert sorted(random_order(10, 42)) == list(range(10))


# -- serialization --------------------------------------------------------------------


def test_tour_text_and_record(tri3):
    tour = arc_greedy(tri3, "non_directional", "gt")
    text = tour_to_text(tour, "tri3")
    assert "instance: tri3" in text
    assert "cost: 6" in text
    assert "tour: 1 2 3" in text  # 1-based for humans
    record = tour_to_record(tour, "tri3")
    assert record["cost"] == 6
    assert record["tour"] == [1, 2, 3]
    assert record["heuristic"] == "arc_greedy"
