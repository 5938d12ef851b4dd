# -*- coding:utf-8 -*-
import pytest

from conftest import complete_bipartite, complete_graph, petersen, random_connected
from planarmax import (
    InstanceTooLarge,
    PlanarityMemo,
    SolveStatus,
    build_graph,
    is_planar,
    oracle_mps_weight,
    oracle_skewness,
    selection_weight,
    solve_mps,
)


@pytest.mark.parametrize(
    "g,skewness",
    [
        (complete_graph(4), 0),
        (complete_graph(5), 1),
        (complete_bipartite(3, 3), 1),
        (complete_graph(6), 3),
        (petersen(), 2),
    ],
)
def test_named_skewness(g, skewness):
    k, witness = oracle_skewness(g)
    assert k == skewness
    assert is_planar(g, witness)
    assert selection_weight(g, witness) == g.total_weight - k


@pytest.mark.slow
@pytest.mark.parametrize("g,skewness", [(complete_graph(7), 6), (complete_bipartite(4, 4), 4)])
def test_named_skewness_large(g, skewness):
    assert oracle_skewness(g)[0] == skewness


def test_weighted_prefers_light_edge():
    # K5 中一条边权重为1 其余为5: 只删除这条边
    edges = [(u, v, 1 if (u, v) == (2, 4) else 5) for u in range(5) for v in range(u + 1, 5)]
    g = build_graph(5, edges)
    k, witness = oracle_skewness(g)
    assert k == 1
    assert witness[g.edge_id(2, 4)] == 0
    assert oracle_mps_weight(g) == 45


def test_guard():
    with pytest.raises(InstanceTooLarge):
        oracle_skewness(complete_graph(9), max_edges=30)


def test_memo_answers_from_known_subdivision():
    # K5 加三条悬挂边 悬挂边id最小 且不属于任何Kuratowski子图
    k5_edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    g = build_graph(8, [(0, 5), (1, 6), (2, 7)] + k5_edges)
    memo = PlanarityMemo(g)
    k, witness = oracle_skewness(g, memo=memo)

    assert k == 1
    assert witness[3] == 0
    assert memo.queries == 5
    assert memo.hits == 3
    assert memo.tests == 2
    assert len(memo.certificates) == 1
    assert memo.certificates[0] == sum(1 << idx for idx in range(3, 13))


def test_memo_is_sound_on_complete_graph(k6):
    memo = PlanarityMemo(k6)
    k, witness = oracle_skewness(k6, memo=memo)
    assert k == 3
    assert is_planar(k6, witness)
    assert memo.hits + memo.tests == memo.queries


NONPLANAR_CORPUS = [
    random_connected(6, 14, 21),
    random_connected(6, 13, 22, max_weight=3),
    random_connected(7, 17, 23),
    random_connected(7, 16, 24, max_weight=3),
]


@pytest.mark.slow
@pytest.mark.parametrize("formulation", ['kuratowski', 'facialwalks', 'schnyder', 'leftright'])
@pytest.mark.parametrize("g", NONPLANAR_CORPUS, ids=lambda g: g.name)
def test_formulations_agree_with_oracle(g, formulation):
    assert not is_planar(g)
    res = solve_mps(g, formulation, {'Heuristic': {'restarts': 5, 'seed': 0}})
    assert res.status is SolveStatus.OPTIMAL
    assert res.weight == oracle_mps_weight(g)
