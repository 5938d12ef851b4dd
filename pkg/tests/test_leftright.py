# -*- coding:utf-8 -*-
import numpy as np
import pytest

from conftest import complete_bipartite, complete_graph
from planarmax import (
    Disconnected,
    EdgeSelection,
    MalformedTree,
    NodeState,
    NoFreeEdge,
    SolveStatus,
    build_graph,
    is_planar,
    solve,
    solve_mps,
)
from planarmax.formulations.leftright import (
    LeftRightConfig,
    TremauxTree,
    _two_coloring,
    build_leftright_model,
    canonical_dfs_tree,
    coloring_relations,
    cotree_edges,
    decode,
    dfs_branch_rule,
    extend_warm_start,
    separate_bicoloring,
)


def _canonical_assignment(g, model, sel):
    # 规范DFS树 全部余树边为蓝色
    index = model.meta['index']
    tree = canonical_dfs_tree(g, sel, index.root)
    assignment = [0] * model.num_vars
    for idx, bit in enumerate(sel):
        assignment[idx] = bit
    for v, u in enumerate(tree.parent):
        if u >= 0:
            assignment[index.t[g.arc_id(u, v)]] = 1
    for (u, v), var in index.l.items():
        assignment[var] = 1 if tree.le(u, v) else 0
    return assignment


def test_tremaux_tree():
    # 0-1-2 与 1-3
    tree = TremauxTree([-1, 0, 1, 1], 0)
    assert tree.depth == [0, 1, 2, 2]
    assert tree.le(0, 3) and tree.le(3, 3) and not tree.lt(3, 3)
    assert not tree.le(2, 3)
    assert tree.meet(2, 3) == 1
    assert tree.path_min(0, 3) == 1
    with pytest.raises(MalformedTree):
        TremauxTree([1, 0, 1], 0)
    with pytest.raises(MalformedTree):
        TremauxTree([-1, 2, 1], 0)


def test_canonical_dfs_tree(k4):
    tree = canonical_dfs_tree(k4, EdgeSelection.all_ones(k4), 0)
    assert tree.parent == [-1, 0, 1, 2]
    assert canonical_dfs_tree(k4, EdgeSelection.from_edges(k4, [0, 1]), 0) is None


def test_model_layout(k4):
    model = build_leftright_model(k4, LeftRightConfig())
    index = model.meta['index']
    assert index.root == 0
    assert len(index.t) == 12 and len(index.l) == 16 and len(index.r) == 6
    assert model.num_vars == 6 + 12 + 16 + 6
    assert model.name_of(index.t[0]) == "lr_t_0_1"
    assert model.name_of(index.t[1]) == "lr_t_1_0"
    assert model.branch_rule is not None and model.lazy_separator is not None

    plain = build_leftright_model(k4, LeftRightConfig(dfs_branching=False, unique_tree=False, symmetry_blue=False))
    assert plain.branch_rule is None
    assert len(plain.constraints) < len(model.constraints)


def test_model_rejects_bad_input():
    with pytest.raises(Disconnected):
        build_leftright_model(build_graph(4, [(0, 1), (2, 3)]), LeftRightConfig())


def test_k4_warm_start(k4):
    model = build_leftright_model(k4, LeftRightConfig())
    warm = extend_warm_start(k4, model, EdgeSelection.all_ones(k4))
    assert warm is not None
    assert model.is_feasible(warm)
    assert separate_bicoloring(k4, model.meta['index'], warm) == []

    sel, (tree, colors) = decode(k4, model, warm)
    assert sel == EdgeSelection.all_ones(k4)
    assert tree.parent == [-1, 0, 1, 2]
    assert sorted(colors) == [1, 2, 4]


def test_k4_has_no_relations(k4):
    sel = EdgeSelection.all_ones(k4)
    tree = canonical_dfs_tree(k4, sel, 0)
    cotree = cotree_edges(k4, sel, tree)
    assert [(e.src, e.tgt) for e in cotree] == [(0, 2), (0, 3), (1, 3)]
    assert list(coloring_relations(tree, cotree)) == []


def test_k5_coloring_conflict(k5):
    model = build_leftright_model(k5, LeftRightConfig())
    sel = EdgeSelection.all_ones(k5)
    assignment = _canonical_assignment(k5, model, sel)
    assert model.is_feasible(assignment)

    constraints = separate_bicoloring(k5, model.meta['index'], assignment)
    assert constraints
    assert all(not constraint.is_satisfied(assignment) for constraint in constraints)
    assert len(separate_bicoloring(k5, model.meta['index'], assignment, limit=1)) == 1

    assert extend_warm_start(k5, model, sel) is None


def test_tree_input():
    g = build_graph(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
    model = build_leftright_model(g, LeftRightConfig())
    result = solve(model)
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == g.m


def test_dfs_branch_rule_first_edge(k4):
    model = build_leftright_model(k4, LeftRightConfig())
    index = model.meta['index']
    state = NodeState([-1] * model.num_vars, 0)
    assert dfs_branch_rule(k4, index, state) == [[(index.t[0], 1), (0, 1)], [(0, 0)]]


def test_dfs_branch_rule_skips_deleted_edge(k4):
    model = build_leftright_model(k4, LeftRightConfig())
    index = model.meta['index']
    values = [-1] * model.num_vars
    values[0] = 0
    children = dfs_branch_rule(k4, index, NodeState(values, 1))
    assert children == [[(index.t[k4.arc_id(0, 2)], 1), (1, 1)], [(1, 0)]]


def test_dfs_branch_rule_exhausted():
    triangle = build_graph(3, [(0, 1), (0, 2), (1, 2)])
    model = build_leftright_model(triangle, LeftRightConfig())
    index = model.meta['index']
    values = [-1] * model.num_vars
    values[index.t[triangle.arc_id(0, 1)]] = 1
    values[index.t[triangle.arc_id(1, 2)]] = 1
    with pytest.raises(NoFreeEdge):
        dfs_branch_rule(triangle, index, NodeState(values, 2))


def test_dfs_branch_rule_depth_limit(k4):
    model = build_leftright_model(k4, LeftRightConfig())
    state = NodeState([-1] * model.num_vars, 3)
    with pytest.raises(NoFreeEdge):
        dfs_branch_rule(k4, model.meta['index'], state, max_depth=3)
    assert dfs_branch_rule(k4, model.meta['index'], state, max_depth=4)


@pytest.mark.slow
def test_solve_k5(k5):
    model = build_leftright_model(k5, LeftRightConfig())
    model.warm_start = extend_warm_start(k5, model, EdgeSelection.all_ones(k5).with_bit(9, 0))
    result = solve(model)
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == 9



def _coloring_matches_planarity(g, sel):
    tree = canonical_dfs_tree(g, sel, 0)
    if tree is None:
        return True
    relations = list(coloring_relations(tree, cotree_edges(g, sel, tree)))
    return (_two_coloring(relations) is not None) == is_planar(g, sel)


@pytest.mark.parametrize("g", [complete_graph(5), complete_bipartite(3, 3)])
def test_two_coloring_exhaustive(g):
    for mask in range(1 << g.m):
        sel = EdgeSelection((mask >> idx) & 1 for idx in range(g.m))
        assert _coloring_matches_planarity(g, sel), sel


@pytest.mark.slow
def test_two_coloring_exhaustive_k6():
    g = complete_graph(6)
    for mask in range(1 << g.m):
        sel = EdgeSelection((mask >> idx) & 1 for idx in range(g.m))
        assert _coloring_matches_planarity(g, sel), sel


@pytest.mark.slow
def test_two_coloring_random_k7():
    g = complete_graph(7)
    rng = np.random.default_rng(7)
    nonplanar = 0
    for _ in range(2000):
        sel = EdgeSelection((rng.random(g.m) < 0.7).tolist())
        assert _coloring_matches_planarity(g, sel), sel
        nonplanar += not is_planar(g, sel)
    assert nonplanar > 0


@pytest.mark.parametrize("symmetry_blue", [True, False])
@pytest.mark.parametrize("unique_tree", [True, False])
def test_ablations_keep_optimum(k4, symmetry_blue, unique_tree):
    wheel = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)], name="wheel")
    cfg = LeftRightConfig(symmetry_blue=symmetry_blue, unique_tree=unique_tree)
    for g in (k4, wheel):
        result = solve(build_leftright_model(g, cfg))
        assert result.status is SolveStatus.OPTIMAL
        assert result.objective_value == g.m


@pytest.mark.slow
@pytest.mark.parametrize("symmetry_blue", [True, False])
@pytest.mark.parametrize("unique_tree", [True, False])
def test_ablations_keep_optimum_k33(symmetry_blue, unique_tree):
    g = complete_bipartite(3, 3)
    cfg = LeftRightConfig(symmetry_blue=symmetry_blue, unique_tree=unique_tree)
    result = solve(build_leftright_model(g, cfg))
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == 8


def test_k33():
    res = solve_mps(complete_bipartite(3, 3), 'leftright')
    assert res.status is SolveStatus.OPTIMAL
    assert res.weight == 8


@pytest.mark.slow
def test_k7():
    res = solve_mps(complete_graph(7), 'leftright', {'Heuristic': {'restarts': 10, 'seed': 0}})
    assert res.status is SolveStatus.OPTIMAL
    assert res.weight == 15
