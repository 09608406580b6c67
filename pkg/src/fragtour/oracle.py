"""Ground-truth machinery.

Everything here is deliberately independent of the construction code it
checks: the exact solver enumerates permutations, tour validation re-walks
the permutation and recomputes cost from scratch, and the cycle check on
committed arc sets uses plain union-find instead of any tracker state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .edges import Arc, Mode, build_sorted_edges, check_mode
from .heuristics import ConstructionError, Provenance, Tour, assemble_order
from .instances import ASYMMETRIC, SYMMETRIC, Instance, tour_cost
from .trackers import SubtourTracker, TrackerStateError, make_tracker

#: exhaustive enumeration stays comfortable up to 9! / 2 tours
BRUTE_FORCE_MAX_N = 10


class OracleCapError(ValueError):
    """Refusal to brute-force an instance beyond the enumeration cap."""


def brute_force_optimal(inst: Instance) -> Tour:
    """Exact minimum-cost Hamiltonian cycle by enumeration.

    Node 0 is fixed first so the result is rotation-canonical; symmetric
    instances enumerate only one direction of each cycle.  Cost ties are
    broken toward the lexicographically smallest enumerated order.
    """
    if inst.n > BRUTE_FORCE_MAX_N:
        raise OracleCapError(
            f"brute force capped at n={BRUTE_FORCE_MAX_N}, instance has {inst.n}"
        )
    weights = inst.weights.tolist()
    symmetric = inst.is_symmetric
    best_cost = None
    best_rest: tuple[int, ...] | None = None
    for rest in itertools.permutations(range(1, inst.n)):
        if symmetric and rest[0] > rest[-1]:
            continue  # the reversed cycle was already enumerated
        cost = weights[0][rest[0]] + weights[rest[-1]][0]
        previous = rest[0]
        for node in rest[1:]:
            cost += weights[previous][node]
            previous = node
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_rest = rest
    assert best_rest is not None
    return Tour(
        order=(0, *best_rest),
        cost=int(best_cost),
        mode=Mode.NON_DIRECTIONAL if symmetric else Mode.DIRECTIONAL,
        provenance=Provenance(heuristic="brute_force"),
    )


def validate_tour(inst: Instance, tour: Tour) -> str | None:
    """None when the tour is a valid costed Hamiltonian cycle, else the
    first violation found, described."""
    order = tour.order
    if len(order) != inst.n:
        return f"length {len(order)} != {inst.n}"
    seen = set()
    for node in order:
        if not 0 <= node < inst.n:
            return f"node {node} out of range"
        if node in seen:
            return f"duplicate node {node}"
        seen.add(node)
    recomputed = tour_cost(inst, order)
    if recomputed != tour.cost:
        return f"cost mismatch: stored {tour.cost}, recomputed {recomputed}"
    return None


def canonical_cycle(order: Sequence[int], symmetric: bool) -> tuple[int, ...]:
    """Rotation-canonical (and for symmetric instances reflection-canonical)
    form of a cycle, for equality comparisons between tours."""
    order = list(order)
    pivot = order.index(0)
    forward = tuple(order[pivot:] + order[:pivot])
    if not symmetric:
        return forward
    backward = tuple([0] + list(reversed(forward[1:])))
    return min(forward, backward)


def arcs_are_disjoint_paths(n: int, arcs: Sequence[Arc], mode: Mode | str) -> bool:
    """Direct graph check that a committed arc set is a vertex-disjoint
    union of simple paths: degree bounds hold and no arc closes a cycle.

    Union-find over the underlying undirected graph; independent of every
    tracker implementation.
    """
    mode = Mode(mode)
    out_deg = [0] * n
    in_deg = [0] * n
    deg = [0] * n
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for arc in arcs:
        if mode is Mode.DIRECTIONAL:
            out_deg[arc.tail] += 1
            in_deg[arc.head] += 1
            if out_deg[arc.tail] > 1 or in_deg[arc.head] > 1:
                return False
        else:
            deg[arc.tail] += 1
            deg[arc.head] += 1
            if deg[arc.tail] > 2 or deg[arc.head] > 2:
                return False
        a, b = find(arc.tail), find(arc.head)
        if a == b:
            return False  # closes a cycle
        parent[a] = b
    return True


@dataclass(frozen=True)
class Divergence:
    iteration: int
    arc: Arc
    verdicts: Mapping[str, bool]


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    mode: Mode
    tours_identical: bool
    costs: Mapping[str, int]
    first_divergence: Divergence | None

    def to_text(self) -> str:
        lines = [
            f"instance: {self.instance}",
            f"mode: {self.mode.value}",
            f"tours_identical: {str(self.tours_identical).lower()}",
        ]
        for kind in sorted(self.costs):
            lines.append(f"cost[{kind}]: {self.costs[kind]}")
        if self.first_divergence is not None:
            d = self.first_divergence
            verdicts = ", ".join(
                f"{k}={'accept' if v else 'reject'}" for k, v in sorted(d.verdicts.items())
            )
            lines.append(
                f"first_divergence: iteration {d.iteration}, "
                f"arc {d.arc.tail + 1}->{d.arc.head + 1} (w={d.arc.weight}), {verdicts}"
            )
        return "\n".join(lines)

    def to_record(self) -> dict[str, object]:
        record: dict[str, object] = {
            "instance": self.instance,
            "mode": self.mode.value,
            "tours_identical": self.tours_identical,
            "costs": dict(self.costs),
        }
        if self.first_divergence is not None:
            d = self.first_divergence
            record["first_divergence"] = {
                "iteration": d.iteration,
                "arc": [d.arc.tail, d.arc.head, d.arc.weight],
                "verdicts": dict(d.verdicts),
            }
        return record


TrackerFactory = Callable[[Instance, Mode], SubtourTracker]


def _default_factories() -> dict[str, TrackerFactory]:
    return {
        kind: (lambda inst, mode, _k=kind: make_tracker(_k, inst, mode))
        for kind in ("el", "mf", "gt")
    }


def verify_equivalence(
    inst: Instance,
    mode: Mode | str,
    tracker_factories: Mapping[str, TrackerFactory] | None = None,
) -> VerificationReport:
    """Drive all trackers over the identical sorted stream in lockstep and
    report the first arc on which their verdicts disagree, if any.

    Each tracker evolves by its own verdicts, so after a divergence the
    runs continue independently to produce comparable final tours.
    """
    mode = check_mode(inst, mode)
    factories = dict(tracker_factories or _default_factories())
    edges = build_sorted_edges(inst, mode)
    trackers = {kind: factory(inst, mode) for kind, factory in factories.items()}
    committed: dict[str, list[Arc]] = {kind: [] for kind in trackers}
    first_divergence: Divergence | None = None
    target = inst.n - 1

    for iteration, arc in enumerate(edges):
        if all(t.accepted == target for t in trackers.values()):
            break
        verdicts: dict[str, bool] = {}
        for kind, tracker in trackers.items():
            if tracker.accepted == target:
                continue
            verdict = tracker.try_commit(arc)
            verdicts[kind] = verdict.accepted
            if verdict.accepted:
                committed[kind].append(arc)
        if (
            first_divergence is None
            and len(verdicts) == len(trackers)
            and len(set(verdicts.values())) > 1
        ):
            first_divergence = Divergence(iteration, arc, verdicts)

    orders: dict[str, tuple] = {}
    costs: dict[str, int] = {}
    for kind, tracker in trackers.items():
        try:
            arcs = committed[kind] + [tracker.close_tour()]
            orders[kind] = assemble_order(inst.n, arcs, mode)
            costs[kind] = tour_cost(inst, orders[kind])
        except (ConstructionError, TrackerStateError):
            # a corrupted tracker (mutation testing) can fail to produce a
            # cycle at all; keep the report comparable instead of crashing
            orders[kind] = ("no-cycle", kind)
            costs[kind] = -1
    tours_identical = len(set(orders.values())) == 1
    if tours_identical:
        first_divergence = None
    return VerificationReport(
        instance=inst.name,
        mode=mode,
        tours_identical=tours_identical,
        costs=costs,
        first_divergence=first_divergence,
    )


# -- seeded random instances for property tests -------------------------------


def random_euclidean_instance(n: int, seed: int, *, grid: int = 1000) -> Instance:
    """Symmetric instance from integer points drawn uniformly on a square
    grid, with nearest-integer Euclidean distances."""
    rng = np.random.default_rng(seed)
    coords = rng.integers(0, grid + 1, size=(n, 2)).astype(np.float64)
    dx = coords[:, 0:1] - coords[:, 0:1].T
    dy = coords[:, 1:2] - coords[:, 1:2].T
    weights = (np.sqrt(dx * dx + dy * dy) + 0.5).astype(np.int64)
    np.fill_diagonal(weights, 0)
    return Instance(
        name=f"euc{n}-s{seed}",
        n=n,
        kind=SYMMETRIC,
        weights=weights,
        source_format="EUC_2D",
    )


def random_asymmetric_instance(
    n: int, seed: int, *, low: int = 1, high: int = 1000
) -> Instance:
    """Asymmetric instance with independent uniform integer weights."""
    rng = np.random.default_rng(seed)
    weights = rng.integers(low, high + 1, size=(n, n)).astype(np.int64)
    np.fill_diagonal(weights, 0)
    return Instance(
        name=f"asym{n}-s{seed}",
        n=n,
        kind=ASYMMETRIC,
        weights=weights,
        source_format="EXPLICIT_FULL",
    )
