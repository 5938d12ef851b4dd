# -*- coding:utf-8 -*-
__all__ = ['cactus_heuristic', 'maximality_check', 'max_weight_spanning_tree_weight', 'best_of_restarts']

from typing import Callable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import CONFIG
from .errors import Disconnected, NotPlanarInput
from .logger import LOG
from .planarity import is_planar
from .types import EdgeSelection, WeightedGraph, is_connected, selection_weight


class _UnionFind(object):
    __slots__ = ['parent']

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        return True


def _triangles(g: WeightedGraph) -> List[Tuple[int, int, int]]:
    found = []
    for u, v in g.edges:
        for w in g.neighbors(v):
            if w > v and g.has_edge(u, w):
                found.append((u, v, w))
    return found


def _augment(g: WeightedGraph, bits: List[int], order: Sequence[int]) -> List[int]:
    # 单遍即可达到极大: 被拒绝的边在选择增大后仍会被拒绝
    nx_graph = g.to_networkx(EdgeSelection(bits))
    for idx in order:
        if bits[idx]:
            continue
        u, v = g.edges[idx]
        if not nx.has_path(nx_graph, u, v):
            nx_graph.add_edge(u, v)
            bits[idx] = 1
            continue
        nx_graph.add_edge(u, v)
        if nx.check_planarity(nx_graph, counterexample=False)[0]:
            bits[idx] = 1
        else:
            nx_graph.remove_edge(u, v)
    return bits


def _tiebreak(g: WeightedGraph, rng: Optional[np.random.Generator]) -> Callable[[int], float]:
    if rng is None:
        return lambda idx: idx
    noise = rng.permutation(g.m)
    return lambda idx: noise[idx]


def cactus_heuristic(
    g: WeightedGraph, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None
) -> EdgeSelection:
    """
    三角形仙人掌贪心 + 逐边极大化增广

    1. 按(三角形权重降序, 边id)贪心选取边不交的三角形 三个端点须位于不同的块中 保证并集是仙人掌
    2. 按(边权降序, 边id)逐条加入其余边 每次用平面性测试检验

    Args:
        g (WeightedGraph): 连通实例
        seed (int, optional): 未传入rng时以该种子打乱同权边的次序. Defaults to None(按边id).
        rng (np.random.Generator, optional): 打乱同权边的次序 优先于seed. Defaults to None.

    Returns:
        EdgeSelection: 极大平面选择

    Raises:
        Disconnected
    """

    if not is_connected(g):
        raise Disconnected(f"{g.name or g} is not connected")

    if rng is None and seed is not None:
        rng = np.random.default_rng(seed)
    tiebreak = _tiebreak(g, rng)
    weights = g.weights
    bits = [0] * g.m

    triangles = []
    for u, v, w in _triangles(g):
        ids = (g.edge_id(u, v), g.edge_id(u, w), g.edge_id(v, w))
        triangles.append((-sum(weights[idx] for idx in ids), sorted(tiebreak(idx) for idx in ids), ids, (u, v, w)))
    triangles.sort(key=lambda item: (item[0], item[1]))

    blocks = _UnionFind(g.n)
    for _, _, ids, (u, v, w) in triangles:
        if len({blocks.find(u), blocks.find(v), blocks.find(w)}) != 3:
            continue
        blocks.union(u, v)
        blocks.union(u, w)
        for idx in ids:
            bits[idx] = 1

    order = sorted(range(g.m), key=lambda idx: (-weights[idx], tiebreak(idx)))
    bits = _augment(g, bits, order)
    sel = EdgeSelection(bits)

    # 带权时贪心仙人掌可能低于最大生成树 以生成树为起点再增广一次兜底
    floor = max_weight_spanning_tree_weight(g)
    if selection_weight(g, sel) < floor:
        tree_bits = [0] * g.m
        for _, _, data in nx.maximum_spanning_tree(g.to_networkx(), weight='weight').edges(data=True):
            tree_bits[data['id']] = 1
        tree_sel = EdgeSelection(_augment(g, tree_bits, order))
        LOG.debug(f"Cactus selection of {g.name or g} fell below the spanning tree floor {floor}")
        if selection_weight(g, tree_sel) > selection_weight(g, sel):
            sel = tree_sel

    return sel


def maximality_check(g: WeightedGraph, sel: EdgeSelection) -> bool:
    """
    是否无法再加入任何一条未选中的边

    Raises:
        NotPlanarInput: sel不是平面的
    """

    sel.check(g)
    if not is_planar(g, sel):
        raise NotPlanarInput("selection is not planar")

    for idx, bit in enumerate(sel):
        if not bit and is_planar(g, sel.with_bit(idx, 1)):
            return False
    return True


def max_weight_spanning_tree_weight(g: WeightedGraph) -> int:
    """
    最大权生成森林的权重
    """

    tree = nx.maximum_spanning_tree(g.to_networkx(), weight='weight')
    return sum(data['weight'] for _, _, data in tree.edges(data=True))


def best_of_restarts(g: WeightedGraph, restarts: Optional[int] = None, seed: Optional[int] = None) -> EdgeSelection:
    """
    确定性运行一次 再以随机的同权次序重启restarts次 取最重的选择

    Args:
        g (WeightedGraph): 连通实例
        restarts (int, optional): 随机重启次数. Defaults to CONFIG['Heuristic']['restarts'] 或 0.
        seed (int, optional): 随机种子. Defaults to CONFIG['Heuristic']['seed'] 或 0.

    Returns:
        EdgeSelection
    """

    if restarts is None:
        restarts = CONFIG['Heuristic'].get('restarts', 0)
    if seed is None:
        seed = CONFIG['Heuristic'].get('seed', 0)

    best = cactus_heuristic(g)
    best_weight = selection_weight(g, best)

    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        sel = cactus_heuristic(g, rng=rng)
        weight = selection_weight(g, sel)
        if weight > best_weight:
            best, best_weight = sel, weight

    return best
