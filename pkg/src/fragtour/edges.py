"""Candidate arc enumeration for the greedy construction shell.

The arc-greedy shell consumes the complete candidate set sorted once,
shortest first.  Directional mode enumerates every ordered pair (n^2 - n
arcs); non-directional mode enumerates one canonical arc per unordered
pair (n(n-1)/2 arcs, tail < head) and is only valid on symmetric
instances.  Ties are broken by (weight, tail, head) so that every tracker
consumes the identical stream and construction is fully deterministic.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np

from .instances import Instance


class Mode(str, Enum):
    DIRECTIONAL = "directional"
    NON_DIRECTIONAL = "non_directional"


class ModeError(ValueError):
    """Raised when a mode is incompatible with an instance."""


class Arc(NamedTuple):
    tail: int
    head: int
    weight: int


def as_mode(mode: Mode | str) -> Mode:
    if isinstance(mode, Mode):
        return mode
    try:
        return Mode(mode)
    except ValueError:
        raise ModeError(
            f"unknown mode {mode!r} (expected 'directional' or 'non_directional')"
        ) from None


def check_mode(inst: Instance, mode: Mode | str) -> Mode:
    """Validate mode against instance symmetry."""
    mode = as_mode(mode)
    if mode is Mode.NON_DIRECTIONAL and not inst.is_symmetric:
        raise ModeError(
            f"non_directional mode requires a symmetric instance, "
            f"{inst.name!r} is asymmetric"
        )
    return mode


def default_mode(inst: Instance) -> Mode:
    """Non-directional for symmetric instances, directional otherwise."""
    return Mode.NON_DIRECTIONAL if inst.is_symmetric else Mode.DIRECTIONAL


def build_sorted_edges(inst: Instance, mode: Mode | str) -> list[Arc]:
    """The full candidate arc set, sorted ascending by (weight, tail, head)."""
    mode = check_mode(inst, mode)
    n = inst.n
    if mode is Mode.DIRECTIONAL:
        tails = np.repeat(np.arange(n), n)
        heads = np.tile(np.arange(n), n)
        keep = tails != heads
        tails, heads = tails[keep], heads[keep]
    else:
        tails, heads = np.triu_indices(n, k=1)
    weights = inst.weights[tails, heads]
    order = np.lexsort((heads, tails, weights))
    return list(
        map(
            Arc._make,
            zip(
                tails[order].tolist(),
                heads[order].tolist(),
                weights[order].tolist(),
            ),
        )
    )
