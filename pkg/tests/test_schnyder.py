# -*- coding:utf-8 -*-
import pytest

from conftest import complete_bipartite, complete_graph, petersen
from planarmax import LE, EdgeSelection, NodeState, NoFreeEdge, SolveStatus, build_graph, solve, solve_mps
from planarmax.formulations.schnyder import (
    SchnyderConfig,
    build_schnyder_model,
    decode,
    extend_warm_start,
    order_branch_rule,
    separate_transitivity,
    symmetry_anchor,
)


def test_symmetry_anchor(k4):
    assert symmetry_anchor(k4) == [(3, 0), (1, 1), (0, 2)]
    path = build_graph(3, [(0, 1), (1, 2)])
    assert symmetry_anchor(path) == [(0, 2), (1, 0)]
    assert symmetry_anchor(build_graph(4, [(0, 1), (2, 3)])) == []


def test_config():
    with pytest.raises(ValueError):
        SchnyderConfig(transitivity='sometimes')
    cfg = SchnyderConfig.from_config({'transitivity': 'lazy', 'max_transitivity_per_round': 7})
    assert cfg.transitivity == 'lazy' and cfg.max_transitivity_per_round == 7
    assert cfg.intersection_constraints and cfg.symmetry_breaking


def test_model_layout(k4):
    model = build_schnyder_model(k4, SchnyderConfig())
    index = model.meta['index']
    assert all(len(t) == 12 for t in index.t)
    assert all(len(a) == 12 for a in index.a)
    assert model.num_vars == 6 + 36 + 36
    assert model.lazy_separator is None
    names = {c.name for c in model.constraints}
    assert {'sy_sym0', 'sy_sym1', 'sy_sym2'} <= names

    lazy = build_schnyder_model(k4, SchnyderConfig(transitivity='lazy'))
    assert lazy.lazy_separator is not None
    assert len(lazy.constraints) == len(model.constraints) - 3 * 24


def test_lazy_transitivity(k4):
    model = build_schnyder_model(k4, SchnyderConfig(transitivity='lazy'))
    t = model.meta['index'].t[0]
    assignment = [0] * model.num_vars
    assignment[t[(0, 1)]] = 1
    assignment[t[(1, 2)]] = 1

    (cut,) = separate_transitivity(model.meta['index'], assignment)
    assert cut.sense == LE and cut.rhs == 1
    assert dict((var, coef) for coef, var in cut.terms) == {t[(0, 1)]: 1, t[(1, 2)]: 1, t[(0, 2)]: -1}

    assignment[t[(2, 3)]] = 1
    assert len(separate_transitivity(model.meta['index'], assignment)) == 2
    assert len(separate_transitivity(model.meta['index'], assignment, limit=1)) == 1


@pytest.mark.parametrize("transitivity", ['explicit', 'lazy'])
def test_warm_start_and_solve_k4(k4, transitivity):
    model = build_schnyder_model(k4, SchnyderConfig(transitivity=transitivity))
    warm = extend_warm_start(k4, model, EdgeSelection.all_ones(k4))
    assert warm is not None
    assert model.is_feasible(warm)

    model.warm_start = warm
    result = solve(model)
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == 6

    sel, orders = decode(k4, model, result.incumbent)
    assert sel == EdgeSelection.all_ones(k4)
    assert all(sorted(order) == [0, 1, 2, 3] for order in orders)


def test_decoded_orders_realize_edges(k4):
    model = build_schnyder_model(k4, SchnyderConfig())
    model.warm_start = extend_warm_start(k4, model, EdgeSelection.all_ones(k4))
    result = solve(model)
    _, orders = decode(k4, model, result.incumbent)
    rank = [{v: pos for pos, v in enumerate(order)} for order in orders]
    for u, v in k4.edges:
        for w in range(4):
            if w not in (u, v):
                assert any(r[u] < r[w] and r[v] < r[w] for r in rank)


@pytest.mark.slow
def test_solve_k5(k5):
    model = build_schnyder_model(k5, SchnyderConfig())
    model.warm_start = extend_warm_start(k5, model, EdgeSelection.all_ones(k5).with_bit(9, 0))
    result = solve(model)
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == 9


def test_order_branch_rule(k4):
    model = build_schnyder_model(k4, SchnyderConfig())
    index = model.meta['index']
    values = [-1] * model.num_vars
    with pytest.raises(NoFreeEdge):
        order_branch_rule(k4, index, NodeState(values, 0))

    for idx in range(k4.m):
        values[idx] = 1
    t0, t1 = index.t[0], index.t[1]
    children = order_branch_rule(k4, index, NodeState(values, 6))
    assert len(children) == 4
    assert children[0] == [(t0[(0, w)], 1) for w in (1, 2, 3)]

    for w in (1, 2, 3):
        values[t0[(0, w)]] = 1
    children = order_branch_rule(k4, index, NodeState(values, 9))
    assert children[0] == [(t1[(0, w)], 1) for w in (1, 2, 3)]


def test_selection_cuts_reject_nonplanar(k5):
    model = build_schnyder_model(k5, SchnyderConfig())
    cuts = model.node_separator
    values = [-1] * model.num_vars
    assert cuts(NodeState(values, 0)) == []

    for idx in range(k5.m):
        values[idx] = 1
    (cut,) = cuts(NodeState(values, 10))
    assert cut.sense == LE and cut.rhs == 9

    values[0] = 0
    assert cuts(NodeState(values, 10)) == []
    assert cuts(NodeState(values, 11)) == []
    assert cuts.tests == 2


@pytest.mark.parametrize("symmetry_breaking", [True, False])
def test_symmetry_breaking_keeps_optimum(k4, symmetry_breaking):
    wheel = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)], name="wheel")
    for g in (k4, wheel):
        model = build_schnyder_model(g, SchnyderConfig(symmetry_breaking=symmetry_breaking))
        result = solve(model)
        assert result.status is SolveStatus.OPTIMAL
        assert result.objective_value == g.m


def test_k33():
    g = complete_bipartite(3, 3)
    res = solve_mps(g, 'schnyder')
    assert res.status is SolveStatus.OPTIMAL
    assert res.weight == 8


@pytest.mark.slow
def test_k33_without_warm_start():
    g = complete_bipartite(3, 3)
    model = build_schnyder_model(g, SchnyderConfig())
    result = solve(model)
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == 8


@pytest.mark.slow
@pytest.mark.parametrize("g, expected", [(petersen(), 13), (complete_bipartite(4, 4), 12), (complete_graph(7), 15)])
def test_girth_bounded_instances(g, expected):
    res = solve_mps(g, 'schnyder', {'Heuristic': {'restarts': 10, 'seed': 0}})
    assert res.status is SolveStatus.OPTIMAL
    assert res.weight == expected
