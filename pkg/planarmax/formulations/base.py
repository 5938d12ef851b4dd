# -*- coding:utf-8 -*-
__all__ = [
    'add_edge_vars',
    'add_euler_row',
    'kuratowski_constraint',
    'SelectionCuts',
    'install_weight_bound',
    'weight_bound',
    'selection_of',
    'edge_var_name',
    'check_nodes',
]

import functools
import itertools
from typing import List, Optional, Sequence, Set

from ..errors import NotNonPlanar, TooFewNodes
from ..pbsolver import LE, Constraint, NodeState, PBModel
from ..planarity import extract_kuratowskis
from ..types import EdgeSelection, KuratowskiSubdivision, WeightedGraph, edge_cap


def edge_var_name(idx: int) -> str:
    return f"s_e{idx}"


def add_edge_vars(model: PBModel, g: WeightedGraph) -> None:
    """
    添加s_e变量 变量id与边id一致 目标系数为边权
    """

    for idx, weight in enumerate(g.weights):
        model.add_var(edge_var_name(idx), weight)


def add_euler_row(model: PBModel, g: WeightedGraph) -> None:
    """
    sum s_e <= 3n-6
    """

    if g.n >= 3:
        model.le({idx: 1 for idx in range(g.m)}, 3 * g.n - 6, "euler")


def weight_bound(weights: Sequence[int], order: Sequence[int], cap: int, state: NodeState) -> Optional[int]:
    """
    至多选cap条边时 当前节点所有补全的权重上界

    Args:
        weights (Sequence[int]): 边权
        order (Sequence[int]): 按权重降序的边id
        cap (int): 平面子图的边数上界
        state (NodeState): 当前节点

    Returns:
        int | None: 已选边的权重 加上剩余名额内最重的自由边 已选边超过cap时为None
    """

    chosen = [idx for idx in order if state.lower(idx)]
    if len(chosen) > cap:
        return None
    room = cap - len(chosen)
    free = (idx for idx in order if state.is_free(idx))
    return sum(weights[idx] for idx in chosen) + sum(weights[idx] for idx in itertools.islice(free, room))


def install_weight_bound(model: PBModel, g: WeightedGraph) -> None:
    """
    以围长收紧的欧拉界作为节点上界 n<3时不安装
    """

    if g.n < 3:
        return
    order = sorted(range(g.m), key=lambda idx: (-g.weights[idx], idx))
    model.node_bound = functools.partial(weight_bound, g.weights, order, edge_cap(g))


def selection_of(g: WeightedGraph, assignment: Sequence[int]) -> EdgeSelection:
    return EdgeSelection(assignment[: g.m])


def check_nodes(g: WeightedGraph, least: int = 3) -> None:
    if g.n < least:
        raise TooFewNodes(f"formulation needs n>={least}, got {g.n}")


def kuratowski_constraint(subdivision: KuratowskiSubdivision) -> Constraint:
    """
    sum(s_e for e in K) <= |K|-1
    """

    name = f"kur_{subdivision.kind}_e{subdivision.edges[0]}"
    return Constraint([(1, idx) for idx in subdivision.edges], LE, len(subdivision) - 1, name)


class SelectionCuts(object):
    """
    选边全部固定后的节点割 选择非平面时返回其中Kuratowski细分的约束
    平面选择按位掩码记住 同一选择下的后续节点不再测试

    Args:
        g (WeightedGraph): 实例
        limit (int, optional): 每个节点抽取的细分数. Defaults to 1.

    Fields:
        planar (set[int]): 已知平面的选择掩码
        tests (int): 平面性测试次数
    """

    __slots__ = ['g', 'limit', 'planar', 'tests']

    def __init__(self, g: WeightedGraph, limit: int = 1) -> None:
        self.g: WeightedGraph = g
        self.limit: int = limit
        self.planar: Set[int] = set()
        self.tests: int = 0

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [planar:{len(self.planar)} / tests:{self.tests}]"

    def __call__(self, state: NodeState) -> List[Constraint]:
        g = self.g
        mask = 0
        for idx in range(g.m):
            if state.is_free(idx):
                return []
            if state.lower(idx):
                mask |= 1 << idx
        if mask in self.planar:
            return []

        self.tests += 1
        sel = EdgeSelection((mask >> idx) & 1 for idx in range(g.m))
        try:
            subdivisions = extract_kuratowskis(g, sel, self.limit)
        except NotNonPlanar:
            self.planar.add(mask)
            return []
        return [kuratowski_constraint(k) for k in subdivisions]
