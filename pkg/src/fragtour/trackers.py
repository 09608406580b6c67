"""Subtour tracking and elimination state machines.

Three interchangeable trackers sit behind one contract: given a candidate
arc, decide whether committing it keeps the partial solution a disjoint
union of simple paths; on acceptance, update state; after n-1 acceptances,
name the unique closing arc of the Hamiltonian cycle.

* :class:`MultipleFragmentTracker` keeps, for every fragment endpoint, the
  opposite endpoint of its fragment, and forbids an arc that would join a
  fragment to itself.
* :class:`ExhaustiveLoopTracker` provisionally traces the fragment that
  contains the candidate arc; a trace that walks back to the arc's tail in
  under n steps means the arc would close a subtour.
* :class:`GreedyTracker` keeps an n-by-n ineligibility matrix plus
  entered/exited arrays and propagates marks by row addition so that a
  fragment's head can never reach its own tail.  Matrix entries only ever
  grow; legality tests zero versus nonzero.

All three return identical accept/reject verdicts on every arc of a given
stream; rejection *reasons* are per-tracker diagnostics and not part of
that contract.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .edges import Arc, Mode, check_mode
from .instances import Instance

REASON_DEGREE = "degree_violation"
REASON_SUBTOUR = "would_close_subtour"
REASON_MARK = "ineligible_mark"

TRACKER_KINDS = ("mf", "el", "gt")


class Verdict(NamedTuple):
    accepted: bool
    reason: str | None


ACCEPTED = Verdict(True, None)


class TrackerStateError(RuntimeError):
    """Raised when a tracker is driven outside its contract."""


class SubtourTracker:
    """Common state and the closing-arc scan shared by all trackers."""

    kind: str = "abstract"

    def __init__(self, inst: Instance, mode: Mode | str):
        self.mode = check_mode(inst, mode)
        self.n = inst.n
        self._weights = inst.weights
        self.accepted = 0
        if self.mode is Mode.DIRECTIONAL:
            self._out = [0] * self.n  # 1 once the node has been left
            self._in = [0] * self.n  # 1 once the node has been entered
        else:
            self._deg = [0] * self.n  # 0..2

    # -- contract -----------------------------------------------------------

    def check(self, arc: Arc) -> Verdict:
        """Pure legality test; never mutates state."""
        raise NotImplementedError

    def commit(self, arc: Arc) -> None:
        """Apply an arc previously vetted by :meth:`check`."""
        raise NotImplementedError

    def try_commit(self, arc: Arc) -> Verdict:
        """Check an arc and commit it if legal."""
        if self.accepted >= self.n - 1:
            raise TrackerStateError(
                f"tracker already holds {self.accepted} arcs; construction is done"
            )
        verdict = self.check(arc)
        if verdict.accepted:
            self.commit(arc)
        return verdict

    def close_tour(self) -> Arc:
        """The unique arc completing the Hamiltonian path into a cycle."""
        if self.accepted != self.n - 1:
            raise TrackerStateError(
                f"close_tour needs {self.n - 1} committed arcs, have {self.accepted}"
            )
        if self.mode is Mode.DIRECTIONAL:
            tail = self._out.index(0)
            head = self._in.index(0)
        else:
            tail, head = (v for v in range(self.n) if self._deg[v] < 2)
        return Arc(tail, head, int(self._weights[tail, head]))

    # -- shared degree tests -------------------------------------------------

    def _degree_ok(self, arc: Arc) -> bool:
        if self.mode is Mode.DIRECTIONAL:
            return not self._out[arc.tail] and not self._in[arc.head]
        return self._deg[arc.tail] < 2 and self._deg[arc.head] < 2

    def _bump_degrees(self, arc: Arc) -> None:
        if self.mode is Mode.DIRECTIONAL:
            self._out[arc.tail] = 1
            self._in[arc.head] = 1
        else:
            self._deg[arc.tail] += 1
            self._deg[arc.head] += 1
        self.accepted += 1


class MultipleFragmentTracker(SubtourTracker):
    """Endpoint bookkeeping: O(1) per arc.

    ``_other_end[v]`` is, for every fragment endpoint v, the opposite
    endpoint of v's fragment (itself for an isolated node).  An arc whose
    head is the opposite endpoint of its tail would close the fragment on
    itself and is rejected.  On acceptance the two merged fragments' outer
    endpoints are pointed at each other.
    """

    kind = "mf"

    def __init__(self, inst: Instance, mode: Mode | str):
        super().__init__(inst, mode)
        self._other_end = list(range(self.n))

    def check(self, arc: Arc) -> Verdict:
        if not self._degree_ok(arc):
            return Verdict(False, REASON_DEGREE)
        if self._other_end[arc.tail] == arc.head:
            return Verdict(False, REASON_SUBTOUR)
        return ACCEPTED

    def commit(self, arc: Arc) -> None:
        a = self._other_end[arc.tail]
        b = self._other_end[arc.head]
        self._other_end[a] = b
        self._other_end[b] = a
        self._bump_degrees(arc)


class ExhaustiveLoopTracker(SubtourTracker):
    """Provisional trace through the fragment containing the candidate arc.

    Directional mode follows committed successor arcs from the candidate's
    head; non-directional mode walks committed edges away from the node it
    arrived from.  Reaching the candidate's tail in under n steps proves a
    subtour; running off the end of the fragment proves the arc is safe.
    """

    kind = "el"

    def __init__(self, inst: Instance, mode: Mode | str):
        super().__init__(inst, mode)
        if self.mode is Mode.DIRECTIONAL:
            self._succ: list[int | None] = [None] * self.n
        else:
            self._adj: list[list[int]] = [[] for _ in range(self.n)]

    def check(self, arc: Arc) -> Verdict:
        if not self._degree_ok(arc):
            return Verdict(False, REASON_DEGREE)
        start, current = arc.tail, arc.head
        steps = 1
        if self.mode is Mode.DIRECTIONAL:
            while self._succ[current] is not None:
                current = self._succ[current]
                steps += 1
                if current == start and steps < self.n:
                    return Verdict(False, REASON_SUBTOUR)
        else:
            previous = -1
            while True:
                following = [u for u in self._adj[current] if u != previous]
                if not following:
                    break
                previous, current = current, following[0]
                steps += 1
                if current == start and steps < self.n:
                    return Verdict(False, REASON_SUBTOUR)
        return ACCEPTED

    def commit(self, arc: Arc) -> None:
        if self.mode is Mode.DIRECTIONAL:
            self._succ[arc.tail] = arc.head
        else:
            self._adj[arc.tail].append(arc.head)
            self._adj[arc.head].append(arc.tail)
        self._bump_degrees(arc)


class GreedyTracker(SubtourTracker):
    """Ineligibility-matrix bookkeeping with mark propagation.

    ``x[i, j] == 0`` means the arc i -> j is still eligible.  The diagonal
    starts at 1 (self-loops are never legal).  Committing i -> j marks
    x[i, j] and then adds row i into every row carrying a mark in column j,
    so the head of the fragment that now ends at j inherits every arc that
    would have reached the fragment's tail.  Entries only ever grow.

    The optional row/column retirement drops a node's row once it has been
    exited and its column once it has been entered (non-directional: both
    at degree 2), shrinking the region later propagations touch.  Verdicts
    are identical with the optimization on or off.
    """

    kind = "gt"

    def __init__(
        self, inst: Instance, mode: Mode | str, *, row_col_delete: bool = True
    ):
        super().__init__(inst, mode)
        self.row_col_delete = row_col_delete
        self._x = np.eye(self.n, dtype=np.int32)
        if row_col_delete:
            self._row_active = np.ones(self.n, dtype=bool)
            self._col_active = np.ones(self.n, dtype=bool)

    def check(self, arc: Arc) -> Verdict:
        if not self._degree_ok(arc):
            return Verdict(False, REASON_DEGREE)
        if self._x[arc.tail, arc.head]:
            return Verdict(False, REASON_MARK)
        return ACCEPTED

    def commit(self, arc: Arc) -> None:
        i, j = arc.tail, arc.head
        x = self._x
        x[i, j] += 1
        if self.mode is Mode.NON_DIRECTIONAL:
            x[j, i] += 1
            folds = ((i, j), (j, i))
        else:
            folds = ((i, j),)
        for source, marked_col in folds:
            if self.row_col_delete:
                rows = np.nonzero((x[:, marked_col] > 0) & self._row_active)[0]
                cols = np.nonzero(self._col_active)[0]
                x[np.ix_(rows, cols)] += x[source, cols]
            else:
                rows = np.nonzero(x[:, marked_col])[0]
                x[rows] += x[source]
        self._bump_degrees(arc)
        if self.row_col_delete:
            self._retire(arc)

    def _retire(self, arc: Arc) -> None:
        if self.mode is Mode.DIRECTIONAL:
            self._row_active[arc.tail] = False
            self._col_active[arc.head] = False
        else:
            for v in (arc.tail, arc.head):
                if self._deg[v] == 2:
                    self._row_active[v] = False
                    self._col_active[v] = False


_TRACKERS = {
    "mf": MultipleFragmentTracker,
    "el": ExhaustiveLoopTracker,
    "gt": GreedyTracker,
}


def make_tracker(
    kind: str,
    inst: Instance,
    mode: Mode | str,
    *,
    row_col_delete: bool = True,
) -> SubtourTracker:
    """Construct one of the trackers by its short name (mf, el, gt)."""
    try:
        cls = _TRACKERS[kind.lower()]
    except KeyError:
        raise ValueError(
            f"unknown tracker {kind!r} (expected one of {', '.join(TRACKER_KINDS)})"
        ) from None
    if cls is GreedyTracker:
        return cls(inst, mode, row_col_delete=row_col_delete)
    return cls(inst, mode)
