"""scikit-learn style estimators over the construction heuristics.

Each estimator follows the fit-and-read-attributes convention used by
fit-only estimators such as agglomerative clustering: ``fit(X)`` takes a
precomputed distance matrix (or an :class:`~fragtour.instances.Instance`)
and exposes the solution as ``tour_`` and ``cost_``.  Hyperparameters are
plain constructor arguments, so ``get_params`` / ``set_params`` / ``clone``
compose with the wider ecosystem.
"""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator

from .edges import Mode, as_mode, default_mode
from .heuristics import (
    arc_greedy,
    distance_sum_order,
    double_ended_nn,
    identity_order,
    nearest_neighbor,
    ordered_greedy,
    random_order,
)
from .instances import ASYMMETRIC, SYMMETRIC, Instance


def check_weight_matrix(X, *, require_symmetric: bool = False) -> np.ndarray:
    """Validate a distance matrix: square, non-negative, integer-valued.

    Returns an int64 copy.  Float inputs must hold exact integers; rounding
    policy belongs to the caller (comparisons downstream are exact integer
    comparisons, so silent rounding here could reorder ties).
    """
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {X.shape}")
    if X.shape[0] < 3:
        raise ValueError("need at least 3 nodes")
    if not np.isfinite(np.asarray(X, dtype=np.float64)).all():
        raise ValueError("weights must be finite")
    W = np.asarray(X, dtype=np.int64)
    if (np.asarray(X, dtype=np.float64) != W).any():
        raise ValueError("weights must be integer-valued; round distances first")
    off_diag = W[~np.eye(W.shape[0], dtype=bool)]
    if (off_diag < 0).any():
        raise ValueError("weights must be non-negative")
    if require_symmetric and not np.array_equal(W, W.T):
        raise ValueError("a symmetric matrix is required")
    W = W.copy()
    np.fill_diagonal(W, 0)
    return W


def as_instance(X, *, name: str = "array") -> Instance:
    """Wrap a raw matrix into an Instance; pass Instances through."""
    if isinstance(X, Instance):
        return X
    W = check_weight_matrix(X)
    kind = SYMMETRIC if np.array_equal(W, W.T) else ASYMMETRIC
    return Instance(
        name=name, n=W.shape[0], kind=kind, weights=W, source_format="EXPLICIT_FULL"
    )


class _BaseTourEstimator(BaseEstimator):
    """Shared fit plumbing; subclasses implement ``_construct``."""

    def _resolve_mode(self, inst: Instance, mode) -> Mode:
        if mode == "auto":
            return default_mode(inst)
        return as_mode(mode)

    def fit(self, X, y=None):
        """Construct a tour for the distance matrix (or Instance) ``X``.

        Sets ``instance_``, ``mode_``, ``tour_`` (node indices) and
        ``cost_``.  Returns self.
        """
        inst = as_instance(X)
        tour = self._construct(inst)
        self.instance_ = inst
        self.mode_ = tour.mode
        self.tour_ = np.asarray(tour.order, dtype=np.int64)
        self.cost_ = tour.cost
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        """Fit and return the tour as an array of node indices."""
        return self.fit(X).tour_

    def _construct(self, inst: Instance):
        raise NotImplementedError


class ArcGreedyTour(_BaseTourEstimator):
    """Shortest-arc-first tour construction with a pluggable subtour tracker.

    Parameters
    ----------
    tracker : {"gt", "el", "mf"}, default="gt"
        Subtour elimination method; all three produce the identical tour.
    mode : {"auto", "directional", "non_directional"}, default="auto"
        "auto" picks non_directional for symmetric matrices.
    row_col_delete : bool, default=True
        Enable the matrix-tracker's row/column retirement (no effect on
        the tour, only on speed).
    """

    def __init__(self, tracker="gt", mode="auto", row_col_delete=True):
        self.tracker = tracker
        self.mode = mode
        self.row_col_delete = row_col_delete

    def _construct(self, inst: Instance):
        mode = self._resolve_mode(inst, self.mode)
        return arc_greedy(
            inst, mode, self.tracker, row_col_delete=self.row_col_delete
        )


class NearestNeighborTour(_BaseTourEstimator):
    """Nearest-neighbor tour growth from a fixed start node.

    Parameters
    ----------
    start : int, default=0
        Node the fragment grows from.
    double_ended : bool, default=False
        Grow from both fragment ends (symmetric matrices only).
    """

    def __init__(self, start=0, double_ended=False):
        self.start = start
        self.double_ended = double_ended

    def _construct(self, inst: Instance):
        if self.double_ended:
            return double_ended_nn(inst, self.start)
        return nearest_neighbor(inst, self.start)


class OrderedGreedyTour(_BaseTourEstimator):
    """Priority-list tour construction; each node takes its cheapest legal arc.

    Parameters
    ----------
    order : {"identity", "distance_sum", "random"} or array-like, default="identity"
        The node priority list, or a rule to generate one.
    mode : {"auto", "directional", "non_directional"}, default="auto"
    tracker : {"gt", "el", "mf"}, default="gt"
    random_state : int, default=0
        Seed used when ``order="random"``.
    """

    def __init__(self, order="identity", mode="auto", tracker="gt", random_state=0):
        self.order = order
        self.mode = mode
        self.tracker = tracker
        self.random_state = random_state

    def _construct(self, inst: Instance):
        mode = self._resolve_mode(inst, self.mode)
        if isinstance(self.order, str):
            if self.order == "identity":
                priority = identity_order(inst.n)
            elif self.order == "distance_sum":
                priority = distance_sum_order(inst)
            elif self.order == "random":
                seed = self.random_state
                if not isinstance(seed, numbers.Integral):
                    raise ValueError("random_state must be an integer seed")
                priority = random_order(inst.n, int(seed))
            else:
                raise ValueError(
                    f"unknown order rule {self.order!r} "
                    "(expected 'identity', 'distance_sum', 'random' or a sequence)"
                )
        else:
            priority = [int(v) for v in self.order]
        return ordered_greedy(inst, mode, priority, self.tracker)
