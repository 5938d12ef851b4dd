# -*- coding:utf-8 -*-
import numpy as np
import pytest

from conftest import complete_bipartite, complete_graph, grid, petersen, random_connected
from planarmax import LE, EdgeSelection, SolveStatus, build_graph, is_planar, solve
from planarmax.formulations.kuratowski import (
    KuratowskiConfig,
    build_kuratowski_model,
    decode,
    extend_warm_start,
    separate_fractional,
    separate_kuratowski,
)


def test_config_bounds():
    with pytest.raises(ValueError):
        KuratowskiConfig(max_constraints_per_round=5, max_extractions_per_round=3)
    with pytest.raises(ValueError):
        KuratowskiConfig(max_constraints_per_round=0)
    cfg = KuratowskiConfig.from_config({'max_constraints_per_round': 2, 'rounding_thresholds': [0.8, 0.5]})
    assert cfg.max_constraints_per_round == 2
    assert cfg.max_extractions_per_round == 250
    assert cfg.rounding_thresholds == (0.8, 0.5)


def test_model_shape(k5):
    model = build_kuratowski_model(k5, KuratowskiConfig())
    assert model.num_vars == k5.m
    assert model.var_names[:3] == ['s_e0', 's_e1', 's_e2']
    assert model.objective == {idx: 1 for idx in range(k5.m)}
    (euler,) = model.constraints
    assert euler.sense == LE and euler.rhs == 9


def test_separator_on_planar_selection(k5):
    sel = EdgeSelection.all_ones(k5).with_bit(0, 0)
    assert separate_kuratowski(k5, sel.bits) == []


def test_separator_cuts_off_selection():
    for g in (complete_graph(5), complete_bipartite(3, 3), complete_graph(6), petersen()):
        ones = EdgeSelection.all_ones(g).bits
        constraints = separate_kuratowski(g, ones, KuratowskiConfig(max_constraints_per_round=4))
        assert 1 <= len(constraints) <= 4
        for constraint in constraints:
            assert constraint.sense == LE
            assert constraint.rhs == len(constraint) - 1
            assert not constraint.is_satisfied(ones)
        assert len(set(constraints)) == len(constraints)


def test_keep_most_violated_orders_by_size(k6):
    constraints = separate_kuratowski(k6, EdgeSelection.all_ones(k6).bits, KuratowskiConfig())
    sizes = [len(constraint) for constraint in constraints]
    assert sizes == sorted(sizes)


@pytest.mark.parametrize(
    "g,expected",
    [
        (complete_graph(4), 6),
        (complete_graph(5), 9),
        (complete_bipartite(3, 3), 8),
        (complete_graph(6), 12),
        (petersen(), 13),
        (grid(3, 3), 12),
    ],
)
def test_optimum(g, expected):
    model = build_kuratowski_model(g, KuratowskiConfig())
    result = solve(model)
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective_value == expected
    sel, certificate = decode(g, model, result.incumbent)
    assert certificate is None
    assert sel.count == expected


def test_weighted_optimum():
    # K5上删除最轻的一条边
    g = build_graph(5, [(0, 1, 7), (0, 2, 3), (0, 3, 5), (0, 4, 2), (1, 2, 4), (1, 3, 6), (1, 4, 8), (2, 3, 9), (2, 4, 1), (3, 4, 4)])
    result = solve(build_kuratowski_model(g, KuratowskiConfig()))
    assert result.objective_value == g.total_weight - 1


def test_warm_start_is_the_selection(k5):
    model = build_kuratowski_model(k5, KuratowskiConfig())
    sel = EdgeSelection.all_ones(k5).with_bit(3, 0)
    assert extend_warm_start(k5, model, sel) == list(sel.bits)


def test_fractional_separation(k5):
    assert len(separate_fractional(k5, [1.0] * k5.m)) == 1
    (constraint,) = separate_fractional(k5, [0.95] * k5.m)
    assert constraint.rhs == 9
    assert separate_fractional(k5, [0.5] * k5.m) == []
    # 0.9阈值下仍不违反
    assert separate_fractional(k5, [0.9] * k5.m) == []


def _random_planar_selection(g, rng):
    # 按随机顺序贪心加边 保持平面
    bits = [0] * g.m
    for idx in rng.permutation(g.m).tolist():
        bits[idx] = 1
        if not is_planar(g, EdgeSelection(bits)):
            bits[idx] = 0
    return EdgeSelection(bits)


@pytest.mark.parametrize("g", [complete_graph(6), petersen(), random_connected(8, 22, 3)])
def test_lazy_cuts_keep_planar_selections(g):
    rng = np.random.default_rng(11)
    cuts = set()
    for _ in range(30):
        bits = (rng.random(g.m) < 0.85).astype(int).tolist()
        cuts.update(separate_kuratowski(g, bits, KuratowskiConfig(max_constraints_per_round=4)))
    assert cuts

    for _ in range(100):
        sel = _random_planar_selection(g, rng)
        assert all(cut.is_satisfied(sel.bits) for cut in cuts)
