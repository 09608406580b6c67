"""Tour construction shells.

The arc-greedy shell feeds the weight-sorted candidate stream to a
subtour tracker; nearest-neighbor and its double-ended variant grow a
single fragment and need no tracker (one fragment cannot close early);
ordered-greedy walks a caller-supplied node priority list and lets each
node in turn claim its cheapest legal arc, tracked by default with the
ineligibility-matrix tracker.

Every construction is deterministic: a fixed instance, mode and
parameterization always yields the identical tour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .edges import Arc, Mode, ModeError, build_sorted_edges, check_mode
from .instances import Instance, tour_cost
from .trackers import SubtourTracker, Verdict, make_tracker

#: optional per-iteration hook: (iteration, arc, verdict) -> None
VerdictHook = Callable[[int, Arc, Verdict], None]


class ConstructionError(RuntimeError):
    """Raised when a construction cannot be completed."""


class InfeasibleOrderError(ConstructionError):
    """A priority order left some node with no legal arc mid-construction."""

    def __init__(self, node: int, step: int, order: Sequence[int]):
        self.node = node
        self.step = step
        self.order = tuple(order)
        super().__init__(
            f"node {node} has no legal arc at step {step}; order {self.order}"
        )


@dataclass(frozen=True)
class Provenance:
    heuristic: str
    tracker: str | None = None
    parameters: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class Tour:
    """A Hamiltonian cycle: ``order`` is a permutation of [0, n)."""

    order: tuple[int, ...]
    cost: int
    mode: Mode
    provenance: Provenance

    @property
    def n(self) -> int:
        return len(self.order)


def arc_greedy(
    inst: Instance,
    mode: Mode | str,
    tracker_kind: str = "gt",
    *,
    row_col_delete: bool = True,
    on_verdict: VerdictHook | None = None,
) -> Tour:
    """Shortest-arc-first construction over the whole candidate set.

    The resulting tour depends only on the instance and mode, never on
    which tracker enforced subtour elimination.
    """
    mode = check_mode(inst, mode)
    edges = build_sorted_edges(inst, mode)
    tracker = make_tracker(tracker_kind, inst, mode, row_col_delete=row_col_delete)
    committed = _drive(tracker, edges, on_verdict)
    order = assemble_order(inst.n, committed, mode)
    return Tour(
        order=order,
        cost=tour_cost(inst, order),
        mode=mode,
        provenance=Provenance(
            heuristic="arc_greedy",
            tracker=tracker.kind,
            parameters={"row_col_delete": row_col_delete},
        ),
    )


def _drive(
    tracker: SubtourTracker,
    edges: Sequence[Arc],
    on_verdict: VerdictHook | None = None,
) -> list[Arc]:
    """Offer a sorted stream to a tracker until the Hamiltonian path closes."""
    n = tracker.n
    committed: list[Arc] = []
    for iteration, arc in enumerate(edges):
        if tracker.accepted == n - 1:
            break
        verdict = tracker.try_commit(arc)
        if on_verdict is not None:
            on_verdict(iteration, arc, verdict)
        if verdict.accepted:
            committed.append(arc)
    if tracker.accepted != n - 1:
        raise ConstructionError(
            f"stream exhausted with {tracker.accepted} of {n - 1} arcs committed"
        )
    committed.append(tracker.close_tour())
    return committed


def assemble_order(n: int, arcs: Sequence[Arc], mode: Mode | str) -> tuple[int, ...]:
    """Walk n committed arcs (a full cycle) into a node order starting at 0.

    Non-directional cycles leave from node 0 toward its smaller-numbered
    neighbor so that the same arc set always yields the same sequence.
    """
    if len(arcs) != n:
        raise ConstructionError(f"cycle needs exactly {n} arcs, got {len(arcs)}")
    order = [0]
    if Mode(mode) is Mode.DIRECTIONAL:
        succ = {arc.tail: arc.head for arc in arcs}
        current = 0
        for _ in range(n - 1):
            if current not in succ:
                raise ConstructionError("committed arcs do not form one cycle")
            current = succ[current]
            order.append(current)
    else:
        neighbors: dict[int, list[int]] = {v: [] for v in range(n)}
        for arc in arcs:
            neighbors[arc.tail].append(arc.head)
            neighbors[arc.head].append(arc.tail)
        previous, current = -1, 0
        for _ in range(n - 1):
            step = [u for u in sorted(neighbors[current]) if u != previous]
            if not step:
                raise ConstructionError("committed arcs do not form one cycle")
            previous, current = current, step[0]
            order.append(current)
    if len(set(order)) != n:
        raise ConstructionError("committed arcs do not form one cycle")
    return tuple(order)


def nearest_neighbor(inst: Instance, start: int = 0) -> Tour:
    """Grow one fragment from ``start``, always to the closest unvisited node.

    Ties go to the smallest node index.  Works on both symmetric and
    asymmetric instances; arcs are costed in traversal direction.
    """
    if not 0 <= start < inst.n:
        raise ValueError(f"start node {start} outside [0, {inst.n})")
    weights = inst.weights
    big = weights.max() + 1
    visited = np.zeros(inst.n, dtype=bool)
    visited[start] = True
    order = [start]
    current = start
    for _ in range(inst.n - 1):
        row = np.where(visited, big, weights[current])
        current = int(np.argmin(row))  # argmin takes the smallest index on ties
        visited[current] = True
        order.append(current)
    return Tour(
        order=tuple(order),
        cost=tour_cost(inst, order),
        mode=Mode.DIRECTIONAL,
        provenance=Provenance(heuristic="nearest_neighbor", parameters={"start": start}),
    )


def double_ended_nn(inst: Instance, start: int = 0) -> Tour:
    """Nearest-neighbor growth from both ends of the fragment.

    Symmetric instances only.  Each step takes the cheaper of the two
    endpoint-minimal extensions; on equal weight the endpoint that has
    been an endpoint longer wins, and the partner tie goes to the
    smallest node index.
    """
    if not inst.is_symmetric:
        raise ModeError("double-ended growth requires a symmetric instance")
    if not 0 <= start < inst.n:
        raise ValueError(f"start node {start} outside [0, {inst.n})")
    weights = inst.weights
    big = weights.max() + 1
    visited = np.zeros(inst.n, dtype=bool)
    visited[start] = True
    fragment = [start]
    ends_since = {"head": 0, "tail": 0}  # step at which each end last changed
    for step in range(1, inst.n):
        head, tail = fragment[-1], fragment[0]
        head_row = np.where(visited, big, weights[head])
        tail_row = np.where(visited, big, weights[tail])
        head_pick = int(np.argmin(head_row))
        tail_pick = int(np.argmin(tail_row))
        grow_head = head_row[head_pick] < tail_row[tail_pick] or (
            head_row[head_pick] == tail_row[tail_pick]
            and ends_since["head"] <= ends_since["tail"]
        )
        if grow_head:
            fragment.append(head_pick)
            visited[head_pick] = True
            ends_since["head"] = step
        else:
            fragment.insert(0, tail_pick)
            visited[tail_pick] = True
            ends_since["tail"] = step
    pivot = fragment.index(start)
    order = fragment[pivot:] + fragment[:pivot]  # present the cycle from start
    return Tour(
        order=tuple(order),
        cost=tour_cost(inst, order),
        mode=Mode.NON_DIRECTIONAL,
        provenance=Provenance(heuristic="double_ended_nn", parameters={"start": start}),
    )


def ordered_greedy(
    inst: Instance,
    mode: Mode | str,
    order: Sequence[int],
    tracker_kind: str = "gt",
    *,
    row_col_delete: bool = True,
) -> Tour:
    """Each node of the priority list claims its cheapest legal arc in turn.

    Directional mode considers arcs leaving the node, non-directional
    mode arcs incident to it; partner ties go to the smallest node index.
    The last node in the list makes no choice; the closing arc is read off
    the tracker.  Unlike nearest neighbor, several fragments can coexist;
    a node left without any legal arc raises
    :class:`InfeasibleOrderError` naming the order.
    """
    mode = check_mode(inst, mode)
    priority = [int(v) for v in order]
    if sorted(priority) != list(range(inst.n)):
        raise ValueError("order must be a permutation of all node indices")
    tracker = make_tracker(tracker_kind, inst, mode, row_col_delete=row_col_delete)
    weights = inst.weights
    committed: list[Arc] = []
    for step, node in enumerate(priority[:-1]):
        partners = sorted(
            (u for u in range(inst.n) if u != node),
            key=lambda u: (int(weights[node, u]), u),
        )
        for partner in partners:
            arc = Arc(node, partner, int(weights[node, partner]))
            if tracker.try_commit(arc).accepted:
                committed.append(arc)
                break
        else:
            raise InfeasibleOrderError(node, step, priority)
    committed.append(tracker.close_tour())
    tour_order = assemble_order(inst.n, committed, mode)
    return Tour(
        order=tour_order,
        cost=tour_cost(inst, tour_order),
        mode=mode,
        provenance=Provenance(
            heuristic="ordered_greedy",
            tracker=tracker.kind,
            parameters={"order": tuple(priority), "row_col_delete": row_col_delete},
        ),
    )


# -- priority list generators -----------------------------------------------


def identity_order(n: int) -> list[int]:
    return list(range(n))


def distance_sum_order(inst: Instance) -> list[int]:
    """Nodes by ascending total distance to all others; ties by index."""
    totals = inst.weights.sum(axis=1)
    return np.argsort(totals, kind="stable").tolist()


def random_order(n: int, seed: int) -> list[int]:
    return np.random.default_rng(seed).permutation(n).tolist()


# -- serialization ------------------------------------------------------------


def tour_to_text(tour: Tour, name: str = "") -> str:
    """Plain-text rendering: name, cost and the 1-based node sequence."""
    lines = []
    if name:
        lines.append(f"instance: {name}")
    lines.append(f"cost: {tour.cost}")
    lines.append("tour: " + " ".join(str(v + 1) for v in tour.order))
    return "\n".join(lines)


def tour_to_record(tour: Tour, name: str = "") -> dict[str, object]:
    """Structured record (1-based nodes) for harness consumers."""
    return {
        "instance": name,
        "cost": tour.cost,
        "mode": tour.mode.value,
        "heuristic": tour.provenance.heuristic,
        "tracker": tour.provenance.tracker,
        "parameters": dict(tour.provenance.parameters),
        "tour": [v + 1 for v in tour.order],
    }
