# -*- coding:utf-8 -*-
__all__ = ['NpcCore', 'NpcReduction', 'reduce', 'lift']

from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import LengthMismatch, NonPlanarCoreSolution
from .logger import LOG
from .planarity import is_planar
from .types import EdgeSelection, WeightedGraph, build_graph


class NpcCore(object):
    """
    一个非平面双连通块经度2节点压缩后的核心

    Fields:
        graph (WeightedGraph): 核心图 节点与边均按原图顺序重新编号
        node_map (list[int]): 核心节点 -> 原图节点
        edge_lift (list[tuple[int, ...]]): 核心边 -> 其代表的原图路径上的边id
        component (int): 所在连通分量的序号
    """

    __slots__ = ['graph', 'node_map', 'edge_lift', 'component']

    def __init__(
        self, graph: WeightedGraph, node_map: List[int], edge_lift: List[Tuple[int, ...]], component: int
    ) -> None:
        self.graph: WeightedGraph = graph
        self.node_map: List[int] = node_map
        self.edge_lift: List[Tuple[int, ...]] = edge_lift
        self.component: int = component

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [component:{self.component} / {self.graph}]"


class NpcReduction(object):
    """
    非平面核心归约结果

    Fields:
        original (WeightedGraph): 原图
        cores (list[NpcCore]): 非平面核心 可能为空
        secured_weight (int): 任何最优解都保留的权重 即原图总权重减去各核心总权重
        component_offsets (list[int]): 每个连通分量已保留的权重
    """

    __slots__ = ['original', 'cores', 'secured_weight', 'component_offsets', '_core']

    def __init__(
        self, original: WeightedGraph, cores: List[NpcCore], secured_weight: int, component_offsets: List[int]
    ) -> None:
        self.original: WeightedGraph = original
        self.cores: List[NpcCore] = cores
        self.secured_weight: int = secured_weight
        self.component_offsets: List[int] = component_offsets
        self._core: Optional[WeightedGraph] = None

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [cores:{len(self.cores)} / secured:{self.secured_weight}]"

    @property
    def is_planar(self) -> bool:
        return not self.cores

    @property
    def core(self) -> Optional[WeightedGraph]:
        """
        全部核心的不交并 没有核心时为None
        """

        if self._core is None and self.cores:
            if len(self.cores) == 1:
                self._core = self.cores[0].graph
            else:
                offset = 0
                triples = []
                for npc_core in self.cores:
                    core = npc_core.graph
                    triples.extend((u + offset, v + offset, w) for (u, v), w in zip(core.edges, core.weights))
                    offset += core.n
                self._core = build_graph(offset, triples, name=f"{self.original.name}.core")
        return self._core


def _suppress(
    block: Dict[int, Dict[int, Tuple[int, Tuple[int, ...]]]]
) -> Dict[int, Dict[int, Tuple[int, Tuple[int, ...]]]]:
    # block: node -> {neighbor: (weight, path edge ids)}
    changed = True
    while changed:
        changed = False
        for v in sorted(block):
            if len(block[v]) != 2:
                continue
            a, b = sorted(block[v])
            if b in block[a]:
                # 会产生平行边
                continue
            wa, pa = block[v][a]
            wb, pb = block[v][b]
            merged = (min(wa, wb), tuple(sorted(pa + pb)))
            del block[a][v]
            del block[b][v]
            del block[v]
            block[a][b] = merged
            block[b][a] = merged
            changed = True
    return block


def reduce(g: WeightedGraph) -> NpcReduction:
    """
    按连通分量与双连通块拆分 丢弃平面块 并在非平面块内压缩度为2的节点
    压缩后的边权取两条边的较小值

    Args:
        g (WeightedGraph): 实例

    Returns:
        NpcReduction: 各核心的偏斜度之和等于原图偏斜度
    """

    nx_graph = g.to_networkx()
    components = sorted((sorted(nodes) for nodes in nx.connected_components(nx_graph)), key=lambda c: c[0])

    cores: List[NpcCore] = []
    offsets: List[int] = []

    for comp_idx, nodes in enumerate(components):
        sub = nx_graph.subgraph(nodes)
        comp_weight = sum(data['weight'] for _, _, data in sub.edges(data=True))
        core_weight = 0

        blocks = []
        for block_edges in nx.biconnected_component_edges(sub):
            blocks.append(sorted(g.edge_id(u, v) for u, v in block_edges))
        blocks.sort(key=lambda ids: ids[0])

        for edge_ids in blocks:
            if len(edge_ids) < 9 or is_planar(g, EdgeSelection.from_edges(g, edge_ids)):
                continue

            block: Dict[int, Dict[int, Tuple[int, Tuple[int, ...]]]] = {}
            for idx in edge_ids:
                u, v = g.edges[idx]
                block.setdefault(u, {})[v] = (g.weights[idx], (idx,))
                block.setdefault(v, {})[u] = (g.weights[idx], (idx,))
            block = _suppress(block)

            node_map = sorted(block)
            inverse = {old: new for new, old in enumerate(node_map)}
            core_edges = sorted(
                (inverse[u], inverse[v], w, path) for u, nbrs in block.items() for v, (w, path) in nbrs.items() if u < v
            )
            core = build_graph(
                len(node_map), [(u, v, w) for u, v, w, _ in core_edges], name=f"{g.name or 'g'}.core{len(cores)}"
            )
            cores.append(NpcCore(core, node_map, [path for _, _, _, path in core_edges], comp_idx))
            core_weight += core.total_weight

            LOG.debug(f"Reduced block of {len(edge_ids)} edges to core n={core.n} m={core.m}")

        offsets.append(comp_weight - core_weight)

    secured = g.total_weight - sum(c.graph.total_weight for c in cores)
    return NpcReduction(g, cores, secured, offsets)


def lift(r: NpcReduction, core_sels: Sequence[EdgeSelection]) -> EdgeSelection:
    """
    将各核心上的平面选择提升到原图
    被删除的核心边对应删除其路径上权重最小(同权取id最小)的一条原图边

    Args:
        r (NpcReduction): 归约
        core_sels (Sequence[EdgeSelection]): 与r.cores一一对应

    Returns:
        EdgeSelection: 原图上的平面选择 权重为secured_weight加各核心选择权重

    Raises:
        NonPlanarCoreSolution: 某个核心选择不是平面的
    """

    if len(core_sels) != len(r.cores):
        raise LengthMismatch(f"{len(r.cores)} cores but {len(core_sels)} selections")

    g = r.original
    bits = [1] * g.m
    for npc_core, sel in zip(r.cores, core_sels):
        sel.check(npc_core.graph)
        if not is_planar(npc_core.graph, sel):
            raise NonPlanarCoreSolution(f"selection on {npc_core.graph.name} is not planar")
        for core_edge, bit in enumerate(sel):
            if not bit:
                path = npc_core.edge_lift[core_edge]
                bits[min(path, key=lambda idx: (g.weights[idx], idx))] = 0

    return EdgeSelection(bits)
