from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fragtour import Mode, ModeError, build_sorted_edges
from fragtour.oracle import random_asymmetric_instance, random_euclidean_instance

from .conftest import instance_from_rows


@pytest.fixture
def five():
    rng = np.random.default_rng(7)
    weights = rng.integers(1, 50, size=(5, 5))
    weights = np.triu(weights, 1) + np.triu(weights, 1).T
    return instance_from_rows(weights, name="five")


def test_directional_count(five):
    assert len(build_sorted_edges(five, Mode.DIRECTIONAL)) == 20  # n^2 - n


def test_non_directional_count(five):
    assert len(build_sorted_edges(five, Mode.NON_DIRECTIONAL)) == 10  # n(n-1)/2


def test_three_node_sort_order(tri3):
    arcs = [(a.tail, a.head, a.weight) for a in build_sorted_edges(tri3, "non_directional")]
    assert arcs == [(0, 1, 1), (0, 2, 2), (1, 2, 3)]


def test_non_directional_requires_symmetric():
    inst = random_asymmetric_instance(6, seed=0)
    with pytest.raises(ModeError):
        build_sorted_edges(inst, Mode.NON_DIRECTIONAL)


@given(seed=st.integers(0, 5_000), directional=st.booleans())
@settings(max_examples=60, deadline=None)
def test_stream_is_sorted_permutation(seed, directional):
    inst = random_euclidean_instance(4 + seed % 8, seed)
    mode = Mode.DIRECTIONAL if directional else Mode.NON_DIRECTIONAL
    arcs = build_sorted_edges(inst, mode)
    n = inst.n
    expected = (
        {(i, j) for i in range(n) for j in range(n) if i != j}
        if directional
        else {(i, j) for i in range(n) for j in range(i + 1, n)}
    )
    # a permutation of the full candidate set: no drops, no duplicates
    assert {(a.tail, a.head) for a in arcs} == expected
    assert len(arcs) == len(expected)
    # weights agree with the instance and no arc touches the diagonal
    for a in arcs:
        assert a.tail != a.head
        assert a.weight == inst.weights[a.tail, a.head]
    # non-decreasing weight, lexicographic (tail, head) among equal weights
    keys = [(a.weight, a.tail, a.head) for a in arcs]
    assert keys == sorted(keys)


@given(seed=st.integers(0, 5_000))
@settings(max_examples=30, deadline=None)
def test_directional_stream_contains_both_orientations(seed):
    inst = random_euclidean_instance(4 + seed % 6, seed)
    pairs = {(a.tail, a.head) for a in build_sorted_edges(inst, Mode.DIRECTIONAL)}
    for i, j in list(pairs):
        assert (j, i) in pairs
