# -*- coding:utf-8 -*-
__all__ = [
    'PlanarityResult',
    'test_planarity',
    'is_planar',
    'verify_embedding',
    'expected_face_count',
    'extract_kuratowskis',
    'classify_subdivision',
    'round_selection',
]

from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set

import networkx as nx

from .errors import InconsistentRotation, LengthMismatch, NotNonPlanar, UnclassifiedCounterexample
from .logger import LOG
from .types import CombinatorialEmbedding, EdgeSelection, KuratowskiSubdivision, WeightedGraph, connected_components


class PlanarityResult(object):
    """
    平面性测试结果

    Fields:
        is_planar (bool): 是否平面
        embedding (CombinatorialEmbedding | None): 平面时的组合嵌入
    """

    __slots__ = ['is_planar', 'embedding']

    def __init__(self, is_planar: bool, embedding: Optional[CombinatorialEmbedding] = None) -> None:
        self.is_planar: bool = is_planar
        self.embedding: Optional[CombinatorialEmbedding] = embedding

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{'Planar' if self.is_planar else 'NonPlanar'}]"

    def __bool__(self) -> bool:
        return self.is_planar


def _rotation_from_networkx(embedding: nx.PlanarEmbedding) -> CombinatorialEmbedding:
    # networkx沿面行走取逆时针方向的下一条边
    rotation = {}
    for v in sorted(embedding.nodes()):
        cw_order = list(embedding.neighbors_cw_order(v))
        if cw_order:
            rotation[v] = cw_order[::-1]
    return CombinatorialEmbedding(rotation)


def test_planarity(g: WeightedGraph, sel: Optional[EdgeSelection] = None) -> PlanarityResult:
    """
    左右平面性测试(networkx实现的LR算法)

    Args:
        g (WeightedGraph): 宿主图
        sel (EdgeSelection, optional): 边选择. Defaults to None(全部边).

    Returns:
        PlanarityResult: 平面时附带组合嵌入
    """

    if sel is not None:
        sel.check(g)

    planar, embedding = nx.check_planarity(g.to_networkx(sel), counterexample=False)
    if not planar:
        return PlanarityResult(False)
    return PlanarityResult(True, _rotation_from_networkx(embedding))


# pytest不应把test_planarity当作用例收集
test_planarity.__test__ = False


def is_planar(g: WeightedGraph, sel: Optional[EdgeSelection] = None) -> bool:
    if sel is not None:
        sel.check(g)
    return nx.check_planarity(g.to_networkx(sel), counterexample=False)[0]


def verify_embedding(g: WeightedGraph, sel: EdgeSelection, emb: CombinatorialEmbedding) -> int:
    """
    对嵌入做面追踪并返回面数 由调用方检查欧拉公式

    Args:
        g (WeightedGraph): 宿主图
        sel (EdgeSelection): 边选择
        emb (CombinatorialEmbedding): 组合嵌入 须恰好覆盖选中的弧

    Returns:
        int: 面数

    Raises:
        InconsistentRotation: 嵌入与选中的弧不一致
    """

    sel.check(g)

    expected = set()
    for idx in sel.selected():
        u, v = g.edges[idx]
        expected.add((u, v))
        expected.add((v, u))

    darts = set(emb.darts())
    if darts != expected:
        missing = sorted(expected - darts)[:3]
        extra = sorted(darts - expected)[:3]
        raise InconsistentRotation(f"rotation does not match the selection. missing:{missing} extra:{extra}")

    return len(emb.faces())


def expected_face_count(g: WeightedGraph, sel: EdgeSelection) -> int:
    """
    平面嵌入下面追踪应得的面数 每个非平凡连通分量满足n-m+f=2
    """

    total = 0
    for component in connected_components(g, sel):
        if len(component) == 1:
            continue
        nodes = set(component)
        m_c = sum(1 for idx in sel.selected() if g.edges[idx][0] in nodes)
        total += m_c - len(component) + 2
    return total


def classify_subdivision(g: WeightedGraph, edge_ids: Iterable[int]) -> Optional[KuratowskiSubdivision]:
    """
    判断边集是否构成K5或K3,3细分

    Args:
        g (WeightedGraph): 宿主图
        edge_ids (Iterable[int]): 边id

    Returns:
        KuratowskiSubdivision | None: 不是细分时为None
    """

    edge_ids = sorted(set(edge_ids))
    incident: Dict[int, List[int]] = {}
    for idx in edge_ids:
        u, v = g.edges[idx]
        incident.setdefault(u, []).append(idx)
        incident.setdefault(v, []).append(idx)

    branch = sorted(v for v, idxs in incident.items() if len(idxs) >= 3)
    if any(len(idxs) not in (2, 3, 4) for idxs in incident.values()):
        return None
    branch_set = set(branch)

    # 沿度为2的节点收缩路径
    minor_edges = []
    used = set()
    for a in branch:
        for idx in incident[a]:
            if idx in used:
                continue
            prev, cur, cur_idx = a, None, idx
            while True:
                used.add(cur_idx)
                u, v = g.edges[cur_idx]
                cur = v if u == prev else u
                if cur in branch_set:
                    break
                nxt = [x for x in incident[cur] if x != cur_idx]
                if len(nxt) != 1:
                    return None
                prev, cur_idx = cur, nxt[0]
            if cur == a:
                return None
            minor_edges.append(frozenset((a, cur)))

    if len(used) != len(edge_ids):
        # 存在不经过分支节点的环
        return None

    minor_set = set(minor_edges)
    if len(minor_set) != len(minor_edges):
        return None

    if len(branch) == 5 and all(len(incident[v]) == 4 for v in branch):
        if len(minor_set) == 10:
            return KuratowskiSubdivision('K5', edge_ids, branch)
        return None

    if len(branch) == 6 and all(len(incident[v]) == 3 for v in branch) and len(minor_set) == 9:
        minor = nx.Graph()
        minor.add_nodes_from(branch)
        minor.add_edges_from(tuple(pair) for pair in minor_set)
        if nx.is_connected(minor) and nx.is_bipartite(minor):
            left, right = nx.bipartite.sets(minor)
            if len(left) == 3 and len(right) == 3:
                return KuratowskiSubdivision('K33', edge_ids, branch)

    return None


def _extract_one(g: WeightedGraph, edge_ids: Sequence[int]) -> Optional[KuratowskiSubdivision]:
    """
    Returns:
        KuratowskiSubdivision | None: 平面时为None

    Raises:
        UnclassifiedCounterexample: 反例无法归类
    """

    nx_graph = nx.Graph()
    for idx in edge_ids:
        u, v = g.edges[idx]
        nx_graph.add_edge(u, v)

    planar, counterexample = nx.check_planarity(nx_graph, counterexample=True)
    if planar:
        return None

    found = sorted(g.edge_id(u, v) for u, v in counterexample.edges())
    subdivision = classify_subdivision(g, found)
    if subdivision is None:
        raise UnclassifiedCounterexample(f"counterexample with {len(found)} edges is not a K5 or K3,3 subdivision")
    return subdivision


def extract_kuratowskis(g: WeightedGraph, sel: EdgeSelection, limit: int) -> List[KuratowskiSubdivision]:
    """
    从非平面选择中抽取至多limit个互不相同的Kuratowski细分
    找到一个细分后 依次临时删除其中一条边再抽取 按边集去重

    Args:
        g (WeightedGraph): 宿主图
        sel (EdgeSelection): 非平面的边选择
        limit (int): 数量上限 >=1

    Returns:
        list[KuratowskiSubdivision]: 按发现顺序

    Raises:
        NotNonPlanar: 选择是平面的
        UnclassifiedCounterexample: 第一个反例无法归类
    """

    sel.check(g)
    limit = max(1, limit)
    host = sel.selected()

    first = _extract_one(g, host)
    if first is None:
        raise NotNonPlanar("selection is planar")

    found: List[KuratowskiSubdivision] = [first]
    seen_edges: Set[FrozenSet[int]] = {first.edge_set}
    seen_removed: Set[FrozenSet[int]] = {frozenset()}
    queue = deque([(frozenset(), first)])
    attempts = 0
    max_attempts = 4 * limit

    while queue and len(found) < limit and attempts < max_attempts:
        removed, subdivision = queue.popleft()
        for idx in subdivision.edges:
            if len(found) >= limit or attempts >= max_attempts:
                break

            next_removed = removed | {idx}
            if next_removed in seen_removed:
                continue
            seen_removed.add(next_removed)

            attempts += 1
            try:
                new = _extract_one(g, [x for x in host if x not in next_removed])
            except UnclassifiedCounterexample as err:
                LOG.warning(f"Failed to extract a subdivision without edges {sorted(next_removed)}. reason:{err}")
                continue
            if new is None or new.edge_set in seen_edges:
                continue

            seen_edges.add(new.edge_set)
            found.append(new)
            queue.append((next_removed, new))

    return found


def round_selection(g: WeightedGraph, values: Sequence[float], threshold: float) -> EdgeSelection:
    """
    分数解取整 小于threshold的边下取整为删除 供外部LP求解器的分数分离使用

    Args:
        g (WeightedGraph): 宿主图
        values (Sequence[float]): 每条边的s_e分数值
        threshold (float): 阈值 如0.99或0.9

    Returns:
        EdgeSelection
    """

    if len(values) != g.m:
        raise LengthMismatch(f"got {len(values)} values but graph has {g.m} edges")
    return EdgeSelection(1 if value >= threshold else 0 for value in values)
