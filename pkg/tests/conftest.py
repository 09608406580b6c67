from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from fragtour import Instance, as_instance, load_instance

DATA = Path(__file__).parent / "data"


def instance_from_rows(rows, name="test") -> Instance:
    """Instance from a literal weight matrix; kind inferred from symmetry."""
    return as_instance(np.array(rows, dtype=np.int64), name=name)


@pytest.fixture(scope="session")
def berlin52() -> Instance:
    return load_instance(DATA / "berlin52.tsp")


@pytest.fixture(scope="session")
def br17() -> Instance:
    return load_instance(DATA / "br17.atsp")


@pytest.fixture
def tri3() -> Instance:
    # the 3-node matrix used throughout: the unique tour costs 1 + 3 + 2 = 6
    return instance_from_rows([[0, 1, 2], [1, 0, 3], [2, 3, 0]], name="tri3")


@pytest.fixture
def square4() -> Instance:
    # unit square with dominated diagonals; optimal cycle cost 4
    return instance_from_rows(
        [
            [0, 1, 10, 1],
            [1, 0, 1, 10],
            [10, 1, 0, 1],
            [1, 10, 1, 0],
        ],
        name="square4",
    )


@pytest.fixture
def priority5() -> Instance:
    """Five nodes where the priority list D,E,C,B,A builds A-D-E-B-C-A.

    Row D's strict minimum is E; with D->E committed, E's cheapest legal
    partner is B; C prefers A over D; B is then forced to C and the
    closing scan yields A->D.  That cycle (cost 11) is also the optimum,
    confirmed by exhaustive enumeration in the tests.
    """
    return instance_from_rows(
        [
            [0, 9, 2, 3, 8],
            [9, 0, 3, 9, 2],
            [2, 3, 0, 7, 9],
            [3, 9, 7, 0, 1],
            [8, 2, 9, 1, 0],
        ],
        name="priority5",
    )


@pytest.fixture
def chain5() -> Instance:
    """Five nodes where greedy accepts 0-1 then 1-2 and must refuse 0-2."""
    return instance_from_rows(
        [
            [0, 1, 3, 10, 11],
            [1, 0, 2, 12, 13],
            [3, 2, 0, 14, 15],
            [10, 12, 14, 0, 4],
            [11, 13, 15, 4, 0],
        ],
        name="chain5",
    )


@pytest.fixture
def collinear5() -> Instance:
    # five evenly spaced points on a line; the sweep tour (cost 80) is optimal
    xs = np.arange(5) * 10
    weights = np.abs(xs[:, None] - xs[None, :])
    return as_instance(weights, name="collinear5")
