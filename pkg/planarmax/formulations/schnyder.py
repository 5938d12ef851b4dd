# -*- coding:utf-8 -*-
__all__ = [
    'SchnyderConfig',
    'SchnyderIndex',
    'build_schnyder_model',
    'separate_transitivity',
    'order_branch_rule',
    'symmetry_anchor',
    'decode',
    'extend_warm_start',
]

import functools
import itertools
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..config import CONFIG
from ..errors import NoFreeEdge
from ..logger import LOG
from ..pbsolver import LE, BranchRule, Constraint, NodeState, PBModel, extend_assignment
from ..types import EdgeSelection, WeightedGraph
from .base import SelectionCuts, add_edge_vars, add_euler_row, check_nodes, install_weight_bound, selection_of


class SchnyderConfig(object):
    """
    Schnyder序模型的开关

    Args:
        intersection_constraints (bool, optional): 三个序的交为空. Defaults to True.
        symmetry_breaking (bool, optional): 固定一个三角形(或两条相邻边)由哪个序实现. Defaults to True.
        transitivity (str, optional): 'explicit'显式写出传递性 'lazy'按需分离. Defaults to 'explicit'.
        max_transitivity_per_round (int, optional): 惰性模式下每轮的约束数. Defaults to 1000.
        order_branching (bool, optional): 选边后三个序轮流自底向上放置节点. Defaults to True.
        selection_cuts (bool, optional): 选边固定且非平面时加入Kuratowski约束剪枝. Defaults to True.
    """

    __slots__ = [
        'intersection_constraints',
        'symmetry_breaking',
        'transitivity',
        'max_transitivity_per_round',
        'order_branching',
        'selection_cuts',
    ]

    def __init__(
        self,
        intersection_constraints: bool = True,
        symmetry_breaking: bool = True,
        transitivity: str = 'explicit',
        max_transitivity_per_round: int = 1000,
        order_branching: bool = True,
        selection_cuts: bool = True,
    ) -> None:
        if transitivity not in ('explicit', 'lazy'):
            raise ValueError(f"unknown transitivity mode {transitivity}")
        self.intersection_constraints: bool = intersection_constraints
        self.symmetry_breaking: bool = symmetry_breaking
        self.transitivity: str = transitivity
        self.max_transitivity_per_round: int = max_transitivity_per_round
        self.order_branching: bool = order_branching
        self.selection_cuts: bool = selection_cuts

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [intersection:{self.intersection_constraints} / "
            f"symmetry:{self.symmetry_breaking} / transitivity:{self.transitivity} / "
            f"order_branching:{self.order_branching} / selection_cuts:{self.selection_cuts}]"
        )

    @classmethod
    def from_config(cls, table: Optional[Mapping] = None) -> "SchnyderConfig":
        if table is None:
            table = CONFIG['Schnyder']
        return cls(
            intersection_constraints=table.get('intersection_constraints', True),
            symmetry_breaking=table.get('symmetry_breaking', True),
            transitivity=table.get('transitivity', 'explicit'),
            max_transitivity_per_round=table.get('max_transitivity_per_round', 1000),
            order_branching=table.get('order_branching', True),
            selection_cuts=table.get('selection_cuts', True),
        )


class SchnyderIndex(object):
    """
    变量id索引

    Fields:
        n (int): 节点数
        t (list[dict[tuple[int, int], int]]): t[i][(u, v)] 取1当且仅当u <_i v
        a (list[dict[tuple[int, int], int]]): a[i][(edge id, v)]
    """

    __slots__ = ['n', 't', 'a']

    def __init__(self, n: int) -> None:
        self.n: int = n
        self.t: List[Dict[Tuple[int, int], int]] = [{}, {}, {}]
        self.a: List[Dict[Tuple[int, int], int]] = [{}, {}, {}]


def symmetry_anchor(g: WeightedGraph) -> List[Tuple[int, int]]:
    """
    对称性破除的锚点

    字典序最小的三角形x<y<z给出[(yz, x), (xz, y), (xy, z)]
    无三角形时取第一个度>=2的节点c及其最小的两个邻居a<b 给出[(ca, b), (cb, a)]

    Returns:
        list[tuple[int, int]]: 第i项(边id, 节点)由第i个序实现 图中没有相邻边时为空
    """

    for x in range(g.n):
        for y in g.neighbors(x):
            if y <= x:
                continue
            for z in g.neighbors(y):
                if z > y and g.has_edge(x, z):
                    return [(g.edge_id(y, z), x), (g.edge_id(x, z), y), (g.edge_id(x, y), z)]

    for c in range(g.n):
        nbrs = g.neighbors(c)
        if len(nbrs) >= 2:
            a, b = nbrs[0], nbrs[1]
            return [(g.edge_id(c, a), b), (g.edge_id(c, b), a)]

    return []


def build_schnyder_model(g: WeightedGraph, cfg: Optional[SchnyderConfig] = None) -> PBModel:
    """
    Schnyder序模型: 三个全序使每条选中边对每个非关联节点都在某个序中位于其下方
    另含欧拉约束 选边固定后按序分支 非平面选择由Kuratowski约束剪掉

    Args:
        g (WeightedGraph): 实例 n>=3
        cfg (SchnyderConfig, optional): 开关. Defaults to SchnyderConfig.from_config().

    Returns:
        PBModel: meta['index']为SchnyderIndex

    Raises:
        TooFewNodes
    """

    check_nodes(g)
    if cfg is None:
        cfg = SchnyderConfig.from_config()

    n = g.n
    index = SchnyderIndex(n)
    model = PBModel(f"schnyder:{g.name or 'g'}")
    add_edge_vars(model, g)
    add_euler_row(model, g)

    for i in range(3):
        for u in range(n):
            for v in range(n):
                if u != v:
                    index.t[i][(u, v)] = model.add_var(f"sy_t{i}_{u}_{v}")
    for i in range(3):
        for idx, edge in enumerate(g.edges):
            for v in range(n):
                if v not in edge:
                    index.a[i][(idx, v)] = model.add_var(f"sy_a{i}_e{idx}_{v}")

    for idx, edge in enumerate(g.edges):
        for v in range(n):
            if v in edge:
                continue
            terms = {index.a[i][(idx, v)]: -1 for i in range(3)}
            terms[idx] = 1
            model.le(terms, 0)
            for i in range(3):
                for u in edge:
                    model.le({index.a[i][(idx, v)]: 1, index.t[i][(u, v)]: -1}, 0)

    if cfg.intersection_constraints:
        for u in range(n):
            for v in range(n):
                if u != v:
                    model.le({index.t[i][(u, v)]: 1 for i in range(3)}, 2)

    if cfg.transitivity == 'explicit':
        for i in range(3):
            t = index.t[i]
            for u, v, w in itertools.permutations(range(n), 3):
                model.le({t[(u, v)]: 1, t[(v, w)]: 1, t[(u, w)]: -1}, 1)
    else:
        model.lazy_separator = functools.partial(separate_transitivity, index, limit=cfg.max_transitivity_per_round)
        model.comments.append("transitivity constraints are separated lazily and not listed")

    for i in range(3):
        for u in range(n):
            for v in range(u + 1, n):
                model.eq({index.t[i][(u, v)]: 1, index.t[i][(v, u)]: 1}, 1)

    if cfg.symmetry_breaking:
        for i, (idx, v) in enumerate(symmetry_anchor(g)):
            terms = {index.a[j][(idx, v)]: 1 for j in range(3) if j != i}
            model.eq(terms, 0, f"sy_sym{i}")

    if cfg.order_branching:
        model.branch_rule = BranchRule.custom(functools.partial(order_branch_rule, g, index))
    if cfg.selection_cuts:
        model.node_separator = SelectionCuts(g)
    install_weight_bound(model, g)

    model.meta['formulation'] = 'schnyder'
    model.meta['index'] = index
    LOG.debug(f"Built {model}")
    return model


def separate_transitivity(index: SchnyderIndex, assignment: Sequence[int], limit: int = 1000) -> List[Constraint]:
    """
    返回所有被违反的传递性约束 t_uv + t_vw - t_uw <= 1 按(i, u, v, w)排序

    Args:
        index (SchnyderIndex): 变量索引
        assignment (Sequence[int]): 整数解
        limit (int, optional): 上限. Defaults to 1000.

    Returns:
        list[Constraint]
    """

    constraints = []
    for i in range(3):
        t = index.t[i]
        for u, v, w in itertools.permutations(range(index.n), 3):
            if assignment[t[(u, v)]] and assignment[t[(v, w)]] and not assignment[t[(u, w)]]:
                constraints.append(Constraint({t[(u, v)]: 1, t[(v, w)]: 1, t[(u, w)]: -1}, LE, 1, f"sy_trans{i}"))
                if len(constraints) >= limit:
                    return constraints
    return constraints


def _placed(index: SchnyderIndex, i: int, state: NodeState) -> List[int]:
    # 自底向上 已固定在其余所有节点之下的节点
    t = index.t[i]
    placed: List[int] = []
    rest = set(range(index.n))
    while len(rest) > 1:
        for v in sorted(rest):
            if all(state.lower(t[(v, w)]) for w in rest if w != v):
                placed.append(v)
                rest.discard(v)
                break
        else:
            break
    return placed


def order_branch_rule(g: WeightedGraph, index: SchnyderIndex, state: NodeState) -> List[List[Tuple[int, int]]]:
    """
    选边固定后 取已放置节点最少的序 把一个剩余节点放到其余剩余节点之下 每个候选一个子节点
    候选按选中度降序 放在底部的节点使该序不再覆盖它与非关联选中边的对

    Raises:
        NoFreeEdge: 仍有自由的边变量 或三个序都已确定
    """

    if any(state.is_free(idx) for idx in range(g.m)):
        raise NoFreeEdge("edge variables are free")

    n = index.n
    prefixes = [_placed(index, i, state) for i in range(3)]
    open_orders = [i for i in range(3) if len(prefixes[i]) < n - 1]
    if not open_orders:
        raise NoFreeEdge("orders are complete")
    i = min(open_orders, key=lambda i: (len(prefixes[i]), i))

    t = index.t[i]
    placed = set(prefixes[i])
    rest = [v for v in range(n) if v not in placed]
    degree = {v: sum(state.lower(idx) for _, idx in g.incident(v)) for v in rest}
    rest.sort(key=lambda v: (-degree[v], v))

    children = [[(t[(v, w)], 1) for w in rest if w != v] for v in rest]
    viable = [child for child in children if all(state.upper(var) for var, _ in child)]
    return viable or children[:1]


def decode(g: WeightedGraph, model: PBModel, assignment: Sequence[int]) -> Tuple[EdgeSelection, List[List[int]]]:
    """
    Returns:
        tuple[EdgeSelection, list[list[int]]]: 选择与三个全序(由小到大的节点序列)
    """

    index: SchnyderIndex = model.meta['index']
    orders = []
    for i in range(3):
        t = index.t[i]
        rank = {v: sum(assignment[t[(u, v)]] for u in range(g.n) if u != v) for v in range(g.n)}
        orders.append(sorted(range(g.n), key=lambda v: rank[v]))
    return selection_of(g, assignment), orders


def extend_warm_start(g: WeightedGraph, model: PBModel, sel: EdgeSelection) -> Optional[List[int]]:
    """
    固定s_e后由求解器在节点上限内搜索三个序
    """

    table = CONFIG['Solver']
    return extend_assignment(
        model,
        {idx: bit for idx, bit in enumerate(sel)},
        node_limit=table.get('warm_start_node_limit', 20000),
        time_limit=table.get('warm_start_time_limit', 10.0),
    )
