# -*- coding:utf-8 -*-
__all__ = [
    'Arc',
    'WeightedGraph',
    'EdgeSelection',
    'CombinatorialEmbedding',
    'KuratowskiSubdivision',
    'build_graph',
    'selection_weight',
    'euler_cap',
    'edge_cap',
    'girth',
    'connected_components',
    'is_connected',
]

import math
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import (
    DuplicateEdge,
    InconsistentRotation,
    LengthMismatch,
    NodeOutOfRange,
    NonPositiveWeight,
    SelfLoop,
    TooFewNodes,
)


class Arc(object):
    """
    有向弧 边e=(u,v) u<v 对应弧id 2e(u->v) 与 2e+1(v->u)

    Fields:
        tail (int): 起点
        head (int): 终点
    """

    __slots__ = ['tail', 'head']

    def __init__(self, tail: int, head: int) -> None:
        self.tail: int = tail
        self.head: int = head

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.tail}->{self.head}]"

    def __eq__(self, obj: "Arc") -> bool:
        return self.tail == obj.tail and self.head == obj.head

    def __hash__(self) -> int:
        return hash((self.tail, self.head))

    def __iter__(self) -> Iterator[int]:
        return iter((self.tail, self.head))

    @property
    def rev(self) -> "Arc":
        return Arc(self.head, self.tail)

    @property
    def undirected(self) -> Tuple[int, int]:
        return (self.tail, self.head) if self.tail < self.head else (self.head, self.tail)


class WeightedGraph(object):
    """
    带正整数边权的简单无向图
    构造后不可变

    Args:
        node_count (int): 节点数n 节点编号为0..n-1
        edges (list[tuple[int, int]]): 边表 端点已规范化为u<v
        weights (list[int]): 边权
        name (str, optional): 实例名. Defaults to ''.

    Fields:
        node_count (int): 节点数n
        edges (tuple[tuple[int, int], ...]): 边表 边id即下标
        weights (tuple[int, ...]): 边权w(e)
        name (str): 实例名
    """

    __slots__ = ['node_count', 'edges', 'weights', 'name', '_adjacency', '_incident', '_edge_index']

    def __init__(self, node_count: int, edges: Sequence[Tuple[int, int]], weights: Sequence[int], name: str = '') -> None:
        self.node_count: int = node_count
        self.edges: Tuple[Tuple[int, int], ...] = tuple(edges)
        self.weights: Tuple[int, ...] = tuple(weights)
        self.name: str = name

        self._edge_index: Dict[Tuple[int, int], int] = {edge: idx for idx, edge in enumerate(self.edges)}

        incident: List[List[Tuple[int, int]]] = [[] for _ in range(node_count)]
        for idx, (u, v) in enumerate(self.edges):
            incident[u].append((v, idx))
            incident[v].append((u, idx))
        for entries in incident:
            entries.sort()
        self._incident: Tuple[Tuple[Tuple[int, int], ...], ...] = tuple(tuple(entries) for entries in incident)
        self._adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(w for w, _ in entries) for entries in incident)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.name or 'unnamed'} / n:{self.n} / m:{self.m}]"

    def __eq__(self, obj: "WeightedGraph") -> bool:
        return self.node_count == obj.node_count and self.edges == obj.edges and self.weights == obj.weights

    def __hash__(self) -> int:
        return hash((self.node_count, self.edges, self.weights))

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """
        按邻居id升序的邻接表 即规范顺序<_π
        """

        return self._adjacency[v]

    def incident(self, v: int) -> Tuple[Tuple[int, int], ...]:
        """
        (邻居, 边id) 按邻居id升序
        """

        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def edge_id(self, u: int, v: int) -> int:
        """
        Returns:
            int: 边{u,v}的id 不存在时为-1
        """

        return self._edge_index.get((u, v) if u < v else (v, u), -1)

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) != -1

    @property
    def arc_count(self) -> int:
        return 2 * len(self.edges)

    def arc_id(self, tail: int, head: int) -> int:
        idx = self.edge_id(tail, head)
        if idx == -1:
            return -1
        return 2 * idx if tail < head else 2 * idx + 1

    def arc(self, arc_id: int) -> Arc:
        u, v = self.edges[arc_id >> 1]
        return Arc(u, v) if arc_id & 1 == 0 else Arc(v, u)

    @staticmethod
    def rev(arc_id: int) -> int:
        return arc_id ^ 1

    @staticmethod
    def undirect(arc_id: int) -> int:
        return arc_id >> 1

    def arcs(self) -> Iterator[Arc]:
        """
        双向化后的全部2m条弧 按弧id顺序
        """

        for u, v in self.edges:
            yield Arc(u, v)
            yield Arc(v, u)

    def to_networkx(self, sel: Optional["EdgeSelection"] = None) -> nx.Graph:
        """
        转换为networkx图 包含全部节点与选中的边

        Args:
            sel (EdgeSelection, optional): 边选择. Defaults to None(全部边).

        Returns:
            nx.Graph: 边属性id与weight
        """

        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.node_count))
        for idx, (u, v) in enumerate(self.edges):
            if sel is None or sel[idx]:
                nx_graph.add_edge(u, v, id=idx, weight=self.weights[idx])
        return nx_graph

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph, weight: str = 'weight', name: str = '') -> "WeightedGraph":
        """
        由networkx图构造 节点按排序后顺序重新编号为0..n-1

        Args:
            nx_graph (nx.Graph): 无向简单图
            weight (str, optional): 边权属性名 缺失时为1. Defaults to 'weight'.
            name (str, optional): 实例名. Defaults to ''.

        Returns:
            WeightedGraph
        """

        try:
            nodes = sorted(nx_graph.nodes())
        except TypeError:
            nodes = sorted(nx_graph.nodes(), key=str)
        node_map = {node: idx for idx, node in enumerate(nodes)}
        triples = [(node_map[u], node_map[v], int(data.get(weight, 1))) for u, v, data in nx_graph.edges(data=True)]
        return build_graph(len(nodes), triples, name=name)

    def subgraph(self, edge_ids: Iterable[int], name: str = '') -> Tuple["WeightedGraph", List[int], List[int]]:
        """
        由边集诱导的子图 仅保留被覆盖的节点并重新编号

        Args:
            edge_ids (Iterable[int]): 边id
            name (str, optional): 子图名. Defaults to ''.

        Returns:
            tuple[WeightedGraph, list[int], list[int]]: 子图, 新节点->原节点, 新边->原边
        """

        edge_ids = sorted(set(edge_ids))
        node_map = sorted({x for idx in edge_ids for x in self.edges[idx]})
        inverse = {old: new for new, old in enumerate(node_map)}
        triples = [(inverse[self.edges[idx][0]], inverse[self.edges[idx][1]], self.weights[idx]) for idx in edge_ids]
        return build_graph(len(node_map), triples, name=name), node_map, edge_ids


class EdgeSelection(object):
    """
    边上的0/1赋值 即s_e向量

    Args:
        bits (Iterable[int]): 每条边一个0/1

    Fields:
        bits (tuple[int, ...]): 0/1向量
    """

    __slots__ = ['bits']

    def __init__(self, bits: Iterable[int]) -> None:
        self.bits: Tuple[int, ...] = tuple(1 if bit else 0 for bit in bits)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{''.join(map(str, self.bits))}]"

    def __eq__(self, obj: "EdgeSelection") -> bool:
        return self.bits == obj.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, idx: int) -> int:
        return self.bits[idx]

    @classmethod
    def all_ones(cls, g: WeightedGraph) -> "EdgeSelection":
        return cls([1] * g.m)

    @classmethod
    def none(cls, g: WeightedGraph) -> "EdgeSelection":
        return cls([0] * g.m)

    @classmethod
    def from_edges(cls, g: WeightedGraph, edge_ids: Iterable[int]) -> "EdgeSelection":
        bits = [0] * g.m
        for idx in edge_ids:
            bits[idx] = 1
        return cls(bits)

    def selected(self) -> List[int]:
        return [idx for idx, bit in enumerate(self.bits) if bit]

    @property
    def count(self) -> int:
        return sum(self.bits)

    def with_bit(self, idx: int, bit: int) -> "EdgeSelection":
        bits = list(self.bits)
        bits[idx] = 1 if bit else 0
        return EdgeSelection(bits)

    def check(self, g: WeightedGraph) -> None:
        """
        Raises:
            LengthMismatch: 长度与边数不符
        """

        if len(self.bits) != g.m:
            raise LengthMismatch(f"selection has {len(self.bits)} bits but graph has {g.m} edges")


class CombinatorialEmbedding(object):
    """
    组合嵌入(旋转系统)
    rotation[v]为v的邻居的逆时针循环序 沿面行走时 经弧u->v到达v后下一条弧为v->succ_v(u)

    Args:
        rotation (dict[int, list[int]]): 节点 -> 邻居循环序

    Fields:
        rotation (dict[int, tuple[int, ...]])
    """

    __slots__ = ['rotation', '_position']

    def __init__(self, rotation: Dict[int, Sequence[int]]) -> None:
        self.rotation: Dict[int, Tuple[int, ...]] = {v: tuple(nbrs) for v, nbrs in rotation.items() if nbrs}
        self._position: Dict[int, Dict[int, int]] = {}

        for v, nbrs in self.rotation.items():
            position = {u: idx for idx, u in enumerate(nbrs)}
            if len(position) != len(nbrs):
                raise InconsistentRotation(f"repeated neighbor in the rotation of {v}")
            self._position[v] = position

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} {self.rotation}"

    def successor(self, v: int, u: int) -> int:
        """
        v处u之后的邻居
        """

        nbrs = self.rotation[v]
        return nbrs[(self._position[v][u] + 1) % len(nbrs)]

    def darts(self) -> Iterator[Tuple[int, int]]:
        for v, nbrs in self.rotation.items():
            for u in nbrs:
                yield (v, u)

    def faces(self) -> List[List[Tuple[int, int]]]:
        """
        面追踪

        Returns:
            list[list[tuple[int, int]]]: 每个面的有向边界(弧序列)

        Raises:
            InconsistentRotation: 旋转系统不对称
        """

        for v, nbrs in self.rotation.items():
            for u in nbrs:
                if v not in self._position.get(u, {}):
                    raise InconsistentRotation(f"arc {v}->{u} has no reverse in the rotation of {u}")

        visited = set()
        faces = []
        for start in sorted(self.darts()):
            if start in visited:
                continue
            face = []
            dart = start
            while dart not in visited:
                visited.add(dart)
                face.append(dart)
                u, v = dart
                dart = (v, self.successor(v, u))
            faces.append(face)

        return faces

    def reversed_at(self, v: int) -> "CombinatorialEmbedding":
        """
        翻转节点v的旋转方向
        """

        rotation = dict(self.rotation)
        rotation[v] = tuple(reversed(rotation[v]))
        return CombinatorialEmbedding(rotation)


class KuratowskiSubdivision(object):
    """
    K5或K3,3细分

    Args:
        kind (str): 'K5' 或 'K33'
        edges (Iterable[int]): 宿主图中的边id
        branch_nodes (Iterable[int]): 5或6个分支节点

    Fields:
        kind (str)
        edges (tuple[int, ...]): 升序边id
        branch_nodes (tuple[int, ...]): 升序分支节点
    """

    __slots__ = ['kind', 'edges', 'branch_nodes']

    def __init__(self, kind: str, edges: Iterable[int], branch_nodes: Iterable[int]) -> None:
        self.kind: str = kind
        self.edges: Tuple[int, ...] = tuple(sorted(edges))
        self.branch_nodes: Tuple[int, ...] = tuple(sorted(branch_nodes))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.kind} / edges:{len(self.edges)} / branch:{self.branch_nodes}]"

    def __eq__(self, obj: "KuratowskiSubdivision") -> bool:
        return self.edges == obj.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)


def build_graph(n: int, weighted_edge_list: Iterable[Sequence[int]], name: str = '') -> WeightedGraph:
    """
    构造规范化的WeightedGraph

    Args:
        n (int): 节点数
        weighted_edge_list (Iterable[tuple[int, int, int] | tuple[int, int]]): (u, v, w) 缺省w时为1
        name (str, optional): 实例名. Defaults to ''.

    Returns:
        WeightedGraph

    Raises:
        NodeOutOfRange, SelfLoop, DuplicateEdge, NonPositiveWeight
    """

    if n < 1:
        raise NodeOutOfRange(f"node count must be positive, got {n}")

    edges = []
    weights = []
    seen = set()
    for item in weighted_edge_list:
        u, v = int(item[0]), int(item[1])
        w = int(item[2]) if len(item) > 2 else 1

        if not (0 <= u < n and 0 <= v < n):
            raise NodeOutOfRange(f"edge ({u},{v}) leaves [0,{n})")
        if u == v:
            raise SelfLoop(f"self-loop at node {u}")
        if w < 1:
            raise NonPositiveWeight(f"edge ({u},{v}) has weight {w}")

        edge = (u, v) if u < v else (v, u)
        if edge in seen:
            raise DuplicateEdge(f"edge {edge} given twice")
        seen.add(edge)

        edges.append(edge)
        weights.append(w)

    return WeightedGraph(n, edges, weights, name=name)


def selection_weight(g: WeightedGraph, sel: EdgeSelection) -> int:
    """
    选中边的权重和

    Raises:
        LengthMismatch
    """

    sel.check(g)
    return sum(w for w, bit in zip(g.weights, sel.bits) if bit)


def euler_cap(g: WeightedGraph) -> int:
    """
    平面简单图的边数上界3n-6

    Raises:
        TooFewNodes: n<3
    """

    if g.n < 3:
        raise TooFewNodes(f"Euler bound needs n>=3, got {g.n}")
    return 3 * g.n - 6


def girth(g: WeightedGraph, sel: Optional[EdgeSelection] = None) -> Optional[int]:
    """
    最短环长

    Returns:
        int | None: 无环时为None
    """

    value = nx.girth(g.to_networkx(sel))
    return None if value == math.inf else int(value)


def edge_cap(g: WeightedGraph) -> int:
    """
    平面子图的边数上界
    围长为k>3时收紧为floor(k(n-2)/(k-2)) 无环时为m

    Raises:
        TooFewNodes: n<3
    """

    cap = euler_cap(g)
    k = girth(g)
    if k is None:
        return g.m
    if k > 3:
        cap = min(cap, k * (g.n - 2) // (k - 2))
    return min(cap, g.m)


def connected_components(g: WeightedGraph, sel: Optional[EdgeSelection] = None) -> List[List[int]]:
    """
    连通分量 每个分量为升序节点表 分量按最小节点排序
    """

    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, (u, v) in enumerate(g.edges):
        if sel is None or sel[idx]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)

    components: Dict[int, List[int]] = {}
    for v in range(g.n):
        components.setdefault(find(v), []).append(v)
    return sorted(components.values())


def is_connected(g: WeightedGraph, sel: Optional[EdgeSelection] = None) -> bool:
    return len(connected_components(g, sel)) == 1
