# -*- coding:utf-8 -*-
import numpy as np
import pytest

from conftest import complete_graph, grid, petersen, random_connected
from planarmax import (
    Disconnected,
    EdgeSelection,
    NotPlanarInput,
    best_of_restarts,
    build_graph,
    cactus_heuristic,
    is_planar,
    max_weight_spanning_tree_weight,
    maximality_check,
    selection_weight,
)


def test_planar_input_is_kept_whole():
    g = grid(3, 3)
    assert cactus_heuristic(g) == EdgeSelection.all_ones(g)


def test_complete_graphs_reach_triangulation():
    for n in (5, 6):
        g = complete_graph(n)
        sel = cactus_heuristic(g)
        assert is_planar(g, sel)
        assert maximality_check(g, sel)
        assert sel.count >= 2 * n - 3


def test_deterministic(petersen_graph):
    assert cactus_heuristic(petersen_graph) == cactus_heuristic(petersen_graph)


def test_disconnected_input():
    with pytest.raises(Disconnected):
        cactus_heuristic(build_graph(4, [(0, 1), (2, 3)]))


def test_maximality_check(k4, k5):
    assert not maximality_check(k4, EdgeSelection.all_ones(k4).with_bit(0, 0))
    with pytest.raises(NotPlanarInput):
        maximality_check(k5, EdgeSelection.all_ones(k5))


def test_spanning_tree_floor():
    graphs = [random_connected(n, n + 5, seed, max_weight=9) for seed, n in enumerate([6, 7, 8, 9, 10, 12])]
    graphs.append(petersen())
    for g in graphs:
        sel = cactus_heuristic(g)
        assert is_planar(g, sel)
        assert maximality_check(g, sel)
        assert selection_weight(g, sel) >= max_weight_spanning_tree_weight(g)


def test_spanning_tree_weight():
    g = build_graph(3, [(0, 1, 5), (1, 2, 1), (0, 2, 3)])
    assert max_weight_spanning_tree_weight(g) == 8


def test_restarts_never_worse():
    g = random_connected(9, 18, 3, max_weight=4)
    base = selection_weight(g, cactus_heuristic(g))
    best = best_of_restarts(g, restarts=5, seed=11)
    assert is_planar(g, best)
    assert selection_weight(g, best) >= base
    assert best_of_restarts(g, restarts=5, seed=11) == best


def test_seed_shuffles_ties(petersen_graph):
    seeded = cactus_heuristic(petersen_graph, seed=5)
    assert seeded == cactus_heuristic(petersen_graph, seed=5)
    assert seeded == cactus_heuristic(petersen_graph, rng=np.random.default_rng(5))

    found = {tuple(cactus_heuristic(petersen_graph, seed=seed)) for seed in range(10)}
    assert len(found) > 1
    for bits in found:
        sel = EdgeSelection(bits)
        assert is_planar(petersen_graph, sel)
        assert maximality_check(petersen_graph, sel)
