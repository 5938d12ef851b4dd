# -*- coding:utf-8 -*-
import itertools

import numpy as np
import pytest

from planarmax import WeightedGraph, build_graph, is_connected


def complete_graph(n: int, name: str = '') -> WeightedGraph:
    return build_graph(n, list(itertools.combinations(range(n), 2)), name=name or f"K{n}")


def complete_bipartite(a: int, b: int, name: str = '') -> WeightedGraph:
    return build_graph(a + b, [(u, a + v) for u in range(a) for v in range(b)], name=name or f"K{a},{b}")


def petersen() -> WeightedGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner, name="petersen")


def grid(rows: int, cols: int) -> WeightedGraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges, name=f"grid{rows}x{cols}")


def random_connected(n: int, m: int, seed: int, max_weight: int = 1) -> WeightedGraph:
    """
    随机生成树加随机边 权重取自[1, max_weight]
    """

    rng = np.random.default_rng(seed)
    order = rng.permutation(n).tolist()
    edges = set()
    for pos in range(1, n):
        u, v = order[pos], order[int(rng.integers(pos))]
        edges.add((min(u, v), max(u, v)))
    candidates = [pair for pair in itertools.combinations(range(n), 2) if pair not in edges]
    extra = rng.permutation(len(candidates))[: max(0, m - len(edges))]
    edges.update(candidates[idx] for idx in extra.tolist())
    weights = rng.integers(1, max_weight + 1, size=len(edges)).tolist()
    g = build_graph(n, [(u, v, w) for (u, v), w in zip(sorted(edges), weights)], name=f"rnd{n}_{m}_{seed}")
    assert is_connected(g)
    return g


@pytest.fixture
def k4() -> WeightedGraph:
    return complete_graph(4)


@pytest.fixture
def k5() -> WeightedGraph:
    return complete_graph(5)


@pytest.fixture
def k6() -> WeightedGraph:
    return complete_graph(6)


@pytest.fixture
def k33() -> WeightedGraph:
    return complete_bipartite(3, 3)


@pytest.fixture
def petersen_graph() -> WeightedGraph:
    return petersen()


@pytest.fixture
def grid33() -> WeightedGraph:
    return grid(3, 3)


@pytest.fixture
def random_graphs():
    return [random_connected(n, n + 2 + seed % 5, seed) for seed, n in enumerate([6, 7, 8, 6, 7, 8, 9, 6])]
