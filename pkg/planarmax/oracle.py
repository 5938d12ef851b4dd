# -*- coding:utf-8 -*-
__all__ = [
    'PlanarityMemo',
    'oracle_skewness',
    'oracle_mps_weight',
    'enumerate_subdivisions',
    'has_kuratowski_subdivision',
]

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .config import CONFIG
from .errors import InstanceTooLarge
from .logger import LOG
from .types import EdgeSelection, KuratowskiSubdivision, WeightedGraph


def _guard(g: WeightedGraph, max_edges: Optional[int]) -> None:
    if max_edges is None:
        max_edges = CONFIG['Oracle'].get('max_edges', 30)
    if g.m > max_edges:
        raise InstanceTooLarge(f"oracle guard is m<={max_edges}, got m={g.m}")


def _subsets_of_weight(weights: Sequence[int], order: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
    """
    按order枚举总权重恰为budget的边子集
    """

    suffix = [0] * (len(order) + 1)
    for pos in range(len(order) - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + weights[order[pos]]

    chosen: List[int] = []

    def rec(pos: int, remaining: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield tuple(chosen)
            return
        if pos == len(order) or suffix[pos] < remaining:
            return
        idx = order[pos]
        if weights[idx] <= remaining:
            chosen.append(idx)
            yield from rec(pos + 1, remaining - weights[idx])
            chosen.pop()
        yield from rec(pos + 1, remaining)

    yield from rec(0, budget)


class PlanarityMemo(object):
    """
    以删除边集的位掩码查询平面性 记住每次非平面测试得到的Kuratowski子图
    删除集与某个已知子图不相交时直接判定为非平面

    Args:
        g (WeightedGraph): 宿主图

    Fields:
        certificates (list[int]): Kuratowski子图的边掩码
        queries (int): 查询次数
        hits (int): 由已知子图直接回答的次数
        tests (int): 实际调用平面性测试的次数
    """

    __slots__ = ['g', 'certificates', 'queries', 'hits', 'tests']

    def __init__(self, g: WeightedGraph) -> None:
        self.g: WeightedGraph = g
        self.certificates: List[int] = []
        self.queries: int = 0
        self.hits: int = 0
        self.tests: int = 0

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [certificates:{len(self.certificates)} / queries:{self.queries} / "
            f"hits:{self.hits} / tests:{self.tests}]"
        )

    def is_planar(self, deleted_mask: int) -> bool:
        """
        Args:
            deleted_mask (int): 第idx位为1表示删除边idx

        Returns:
            bool: 删除后是否平面
        """

        self.queries += 1
        for certificate in self.certificates:
            if not certificate & deleted_mask:
                self.hits += 1
                return False

        self.tests += 1
        g = self.g
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(g.n))
        nx_graph.add_edges_from(edge for idx, edge in enumerate(g.edges) if not (deleted_mask >> idx) & 1)
        planar, counterexample = nx.check_planarity(nx_graph, counterexample=True)
        if not planar:
            certificate = 0
            for u, v in counterexample.edges():
                certificate |= 1 << g.edge_id(u, v)
            self.certificates.append(certificate)
        return planar


def oracle_skewness(
    g: WeightedGraph, max_edges: Optional[int] = None, memo: Optional[PlanarityMemo] = None
) -> Tuple[int, EdgeSelection]:
    """
    穷举求加权偏斜度 按删除权重k=0,1,2,...逐层加深

    Args:
        g (WeightedGraph): 实例
        max_edges (int, optional): 边数上限. Defaults to CONFIG['Oracle']['max_edges'] 或 30.
        memo (PlanarityMemo, optional): 平面性查询缓存 可由调用方传入以读取统计. Defaults to None(新建).

    Returns:
        tuple[int, EdgeSelection]: 最小删除权重与对应的平面选择

    Raises:
        InstanceTooLarge
    """

    _guard(g, max_edges)

    if memo is None:
        memo = PlanarityMemo(g)
    order = list(range(g.m))

    # 欧拉界给出起始预算
    budget = 0
    if g.n >= 3 and g.m > 3 * g.n - 6:
        budget = sum(sorted(g.weights)[: g.m - (3 * g.n - 6)])

    total = g.total_weight
    while budget <= total:
        for deleted in _subsets_of_weight(g.weights, order, budget):
            mask = 0
            for idx in deleted:
                mask |= 1 << idx
            if memo.is_planar(mask):
                witness = EdgeSelection(0 if (mask >> idx) & 1 else 1 for idx in range(g.m))
                LOG.debug(f"Oracle skewness of {g.name or g}: {budget} with {memo}")
                return budget, witness
        budget += 1

    return total, EdgeSelection.none(g)


def oracle_mps_weight(g: WeightedGraph, max_edges: Optional[int] = None) -> int:
    """
    最大平面子图的精确权重 即总权重减去偏斜度

    Raises:
        InstanceTooLarge
    """

    skewness, _ = oracle_skewness(g, max_edges)
    return g.total_weight - skewness


def enumerate_subdivisions(
    g: WeightedGraph, sel: Optional[EdgeSelection] = None, limit: Optional[int] = None
) -> List[KuratowskiSubdivision]:
    """
    穷举选择中的全部K5/K3,3细分 仅适用于小图
    对每组分支节点回溯搜索内部不相交的路径系统

    Args:
        g (WeightedGraph): 宿主图
        sel (EdgeSelection, optional): 边选择. Defaults to None(全部边).
        limit (int, optional): 找到limit个后停止. Defaults to None.

    Returns:
        list[KuratowskiSubdivision]: 按边集去重
    """

    adjacency: List[Set[int]] = [set() for _ in range(g.n)]
    for idx, (u, v) in enumerate(g.edges):
        if sel is None or sel[idx]:
            adjacency[u].add(v)
            adjacency[v].add(u)

    found: Dict[Tuple[int, ...], KuratowskiSubdivision] = {}
    candidates = [v for v in range(g.n) if len(adjacency[v]) >= 3]

    def paths(a: int, b: int, free: Set[int]) -> Iterator[List[int]]:
        # a到b且内部节点取自free的简单路径
        stack = [(a, [a])]
        while stack:
            cur, path = stack.pop()
            for nxt in sorted(adjacency[cur], reverse=True):
                if nxt == b:
                    yield path + [b]
                elif nxt in free and nxt not in path:
                    stack.append((nxt, path + [nxt]))

    def search(kind: str, branch: Sequence[int], pairs: List[Tuple[int, int]]) -> None:
        free = set(range(g.n)) - set(branch)
        chosen: List[List[int]] = []

        def rec(pos: int, free: Set[int]) -> bool:
            if limit is not None and len(found) >= limit:
                return True
            if pos == len(pairs):
                edge_ids = tuple(
                    sorted(g.edge_id(path[k], path[k + 1]) for path in chosen for k in range(len(path) - 1))
                )
                if edge_ids not in found:
                    found[edge_ids] = KuratowskiSubdivision(kind, edge_ids, branch)
                return False
            a, b = pairs[pos]
            for path in paths(a, b, free):
                chosen.append(path)
                if rec(pos + 1, free - set(path[1:-1])):
                    return True
                chosen.pop()
            return False

        rec(0, free)

    for branch in itertools.combinations(candidates, 5):
        if all(len(adjacency[v]) >= 4 for v in branch):
            search('K5', branch, list(itertools.combinations(branch, 2)))
            if limit is not None and len(found) >= limit:
                return list(found.values())

    for branch in itertools.combinations(candidates, 6):
        first = branch[0]
        for rest in itertools.combinations(branch[1:], 2):
            left = (first,) + rest
            right = tuple(v for v in branch if v not in left)
            search('K33', branch, [(a, b) for a in left for b in right])
            if limit is not None and len(found) >= limit:
                return list(found.values())

    return list(found.values())


def has_kuratowski_subdivision(g: WeightedGraph, sel: Optional[EdgeSelection] = None) -> bool:
    """
    穷举判定是否含Kuratowski细分 即非平面
    """

    return bool(enumerate_subdivisions(g, sel, limit=1))
