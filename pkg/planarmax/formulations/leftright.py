# -*- coding:utf-8 -*-
__all__ = [
    'LeftRightConfig',
    'LeftRightIndex',
    'TremauxTree',
    'CotreeEdge',
    'ColoringRelation',
    'build_leftright_model',
    'coloring_relations',
    'separate_bicoloring',
    'dfs_branch_rule',
    'canonical_dfs_tree',
    'decode',
    'extend_warm_start',
]

import functools
import itertools
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..config import CONFIG
from ..errors import Disconnected, MalformedTree, NoFreeEdge
from ..logger import LOG
from ..pbsolver import GE, LE, BranchRule, Constraint, NodeState, PBModel
from ..types import EdgeSelection, WeightedGraph, is_connected
from .base import SelectionCuts, add_edge_vars, add_euler_row, check_nodes, install_weight_bound, selection_of


class LeftRightConfig(object):
    """
    左右着色模型的开关

    Args:
        symmetry_blue (bool, optional): 树边与删除边染蓝. Defaults to True.
        unique_tree (bool, optional): 要求t为规范DFS树. Defaults to True.
        dfs_branching (bool, optional): 使用DFS分支规则. Defaults to True.
        dfs_branching_max_depth (int | None, optional): DFS分支的最大深度. Defaults to None(不限).
        max_coloring_constraints_per_round (int, optional): 每轮分离的约束数. Defaults to 1000.
        root (int, optional): 树根. Defaults to 0.
        selection_cuts (bool, optional): 选边固定且非平面时加入Kuratowski约束剪枝. Defaults to True.
    """

    __slots__ = [
        'symmetry_blue',
        'unique_tree',
        'dfs_branching',
        'dfs_branching_max_depth',
        'max_coloring_constraints_per_round',
        'root',
        'selection_cuts',
    ]

    def __init__(
        self,
        symmetry_blue: bool = True,
        unique_tree: bool = True,
        dfs_branching: bool = True,
        dfs_branching_max_depth: Optional[int] = None,
        max_coloring_constraints_per_round: int = 1000,
        root: int = 0,
        selection_cuts: bool = True,
    ) -> None:
        self.symmetry_blue: bool = symmetry_blue
        self.unique_tree: bool = unique_tree
        self.dfs_branching: bool = dfs_branching
        self.dfs_branching_max_depth: Optional[int] = dfs_branching_max_depth
        self.max_coloring_constraints_per_round: int = max_coloring_constraints_per_round
        self.root: int = root
        self.selection_cuts: bool = selection_cuts

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [blue:{self.symmetry_blue} / unique_tree:{self.unique_tree} / "
            f"dfs:{self.dfs_branching}({self.dfs_branching_max_depth}) / root:{self.root} / "
            f"selection_cuts:{self.selection_cuts}]"
        )

    @classmethod
    def from_config(cls, table: Optional[Mapping] = None) -> "LeftRightConfig":
        if table is None:
            table = CONFIG['LeftRight']
        return cls(
            symmetry_blue=table.get('symmetry_blue', True),
            unique_tree=table.get('unique_tree', True),
            dfs_branching=table.get('dfs_branching', True),
            dfs_branching_max_depth=table.get('dfs_branching_max_depth'),
            max_coloring_constraints_per_round=table.get('max_coloring_constraints_per_round', 1000),
            root=table.get('root', 0),
            selection_cuts=table.get('selection_cuts', True),
        )


class LeftRightIndex(object):
    """
    变量id索引

    Fields:
        n (int): 节点数
        root (int): 树根
        t (list[int]): 弧id -> t_d
        l (dict[tuple[int, int], int]): (u, v) -> ℓ_uv 含u==v
        r (list[int]): 边id -> r_e
    """

    __slots__ = ['n', 'root', 't', 'l', 'r']

    def __init__(self, n: int, root: int) -> None:
        self.n: int = n
        self.root: int = root
        self.t: List[int] = []
        self.l: Dict[Tuple[int, int], int] = {}
        self.r: List[int] = []


class TremauxTree(object):
    """
    有根生成树及其祖先关系

    Args:
        parent (list[int]): 父节点 根为-1
        root (int): 根

    Fields:
        parent (list[int])
        root (int)
        depth (list[int])
    """

    __slots__ = ['parent', 'root', 'depth', '_ancestors']

    def __init__(self, parent: Sequence[int], root: int) -> None:
        self.parent: List[int] = list(parent)
        self.root: int = root
        n = len(parent)

        if self.parent[root] != -1:
            raise MalformedTree(f"root {root} has parent {self.parent[root]}")

        self.depth: List[int] = [-1] * n
        self.depth[root] = 0
        self._ancestors: List[frozenset] = [frozenset()] * n
        self._ancestors[root] = frozenset((root,))
        for v in range(n):
            chain = []
            cur = v
            while self.depth[cur] < 0:
                chain.append(cur)
                cur = self.parent[cur]
                if cur < 0 or len(chain) > n:
                    raise MalformedTree(f"node {v} does not reach the root")
            for node in reversed(chain):
                self.depth[node] = self.depth[self.parent[node]] + 1
                self._ancestors[node] = self._ancestors[self.parent[node]] | {node}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [root:{self.root} / parent:{self.parent}]"

    def le(self, u: int, v: int) -> bool:
        """
        u是v的祖先或u==v
        """

        return u in self._ancestors[v]

    def lt(self, u: int, v: int) -> bool:
        return u != v and u in self._ancestors[v]

    def meet(self, u: int, v: int) -> int:
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u

    def path_min(self, top: int, bottom: int) -> int:
        """
        top(不含)到bottom(含)的树路径上id最小的节点
        """

        best = bottom
        cur = bottom
        while cur != top:
            best = min(best, cur)
            cur = self.parent[cur]
        return best


class CotreeEdge(object):
    """
    余树边 src为靠近根的端点

    Fields:
        edge (int): 边id
        src (int)
        tgt (int)
    """

    __slots__ = ['edge', 'src', 'tgt']

    def __init__(self, edge: int, src: int, tgt: int) -> None:
        self.edge: int = edge
        self.src: int = src
        self.tgt: int = tgt

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [e{self.edge}: {self.src}->{self.tgt}]"


class ColoringRelation(object):
    """
    由三种构型之一导出的着色关系

    Fields:
        kind (str): 'P1'(同色) 'P2'/'P3'(异色)
        alpha (CotreeEdge)
        beta (CotreeEdge)
        gamma (CotreeEdge)
        delta (CotreeEdge | None): 仅P3
        u (int), v (int), w (int | None): 见证节点
    """

    __slots__ = ['kind', 'alpha', 'beta', 'gamma', 'delta', 'u', 'v', 'w']

    def __init__(
        self,
        kind: str,
        alpha: CotreeEdge,
        beta: CotreeEdge,
        gamma: CotreeEdge,
        delta: Optional[CotreeEdge],
        u: int,
        v: int,
        w: Optional[int] = None,
    ) -> None:
        self.kind = kind
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.delta = delta
        self.u = u
        self.v = v
        self.w = w

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.kind} e{self.alpha.edge} e{self.beta.edge}]"

    @property
    def same_color(self) -> bool:
        return self.kind == 'P1'


def cotree_edges(g: WeightedGraph, sel: EdgeSelection, tree: TremauxTree) -> List[CotreeEdge]:
    """
    Raises:
        MalformedTree: 某条选中边的端点不可比
    """

    edges = []
    for idx in sel.selected():
        u, v = g.edges[idx]
        if tree.parent[v] == u or tree.parent[u] == v:
            continue
        if tree.le(u, v):
            edges.append(CotreeEdge(idx, u, v))
        elif tree.le(v, u):
            edges.append(CotreeEdge(idx, v, u))
        else:
            raise MalformedTree(f"edge {idx}=({u},{v}) joins incomparable nodes")
    edges.sort(key=lambda e: (e.src, e.tgt))
    return edges


def coloring_relations(tree: TremauxTree, cotree: Sequence[CotreeEdge]) -> Iterator[ColoringRelation]:
    """
    枚举余树边之间的同色(P1)与异色(P2, P3)关系

    Yields:
        ColoringRelation
    """

    lt, le, meet, path_min = tree.lt, tree.le, tree.meet, tree.path_min

    for a, b in itertools.permutations(cotree, 2):
        m_ab = meet(a.tgt, b.tgt)
        for c in cotree:
            if c is a or c is b or not lt(c.src, a.src):
                continue
            x = meet(m_ab, c.tgt)
            if not lt(b.src, x):
                continue

            if le(a.src, b.src) and lt(x, m_ab):
                yield ColoringRelation('P1', a, b, c, None, path_min(b.src, x), path_min(x, m_ab))

            if lt(a.src, b.src):
                m_bc = meet(b.tgt, c.tgt)
                if lt(x, m_bc):
                    yield ColoringRelation('P2', a, b, c, None, path_min(b.src, x), path_min(x, m_bc))

    by_src: Dict[int, List[CotreeEdge]] = {}
    for e in cotree:
        by_src.setdefault(e.src, []).append(e)

    for a_src, group in by_src.items():
        if len(group) < 2:
            continue
        for a, b in itertools.permutations(group, 2):
            t = meet(a.tgt, b.tgt)
            if not lt(a_src, t):
                continue
            for c_src, lower in by_src.items():
                if len(lower) < 2 or not lt(c_src, a_src):
                    continue
                for c, d in itertools.permutations(lower, 2):
                    m_ac = meet(a.tgt, c.tgt)
                    m_bd = meet(b.tgt, d.tgt)
                    if lt(t, m_ac) and lt(t, m_bd):
                        yield ColoringRelation(
                            'P3', a, b, c, d, path_min(a_src, t), path_min(t, m_ac), path_min(t, m_bd)
                        )


class _Expr(object):
    __slots__ = ['terms', 'const']

    def __init__(self) -> None:
        self.terms: Dict[int, int] = {}
        self.const: int = 0

    def add(self, var: int, coef: int = 1) -> "_Expr":
        self.terms[var] = self.terms.get(var, 0) + coef
        return self


def _p_term(g: WeightedGraph, index: LeftRightIndex, rel: ColoringRelation) -> _Expr:
    l = index.l
    expr = _Expr()

    def cotree_term(e: CotreeEdge) -> None:
        expr.add(l[(e.src, e.tgt)]).add(e.edge)
        expr.add(index.t[g.arc_id(e.src, e.tgt)], -1).add(index.t[g.arc_id(e.tgt, e.src)], -1)
        expr.const -= 2

    a, b, c, u, v = rel.alpha, rel.beta, rel.gamma, rel.u, rel.v
    for e in (a, b, c):
        cotree_term(e)
    expr.add(l[(c.src, a.src)]).add(l[(u, v)])
    expr.const -= 2

    if rel.kind == 'P1':
        expr.add(l[(a.src, b.src)]).add(l[(b.src, u)]).add(l[(u, c.tgt)])
        expr.add(l[(v, c.tgt)], -1).add(l[(v, a.tgt)]).add(l[(v, b.tgt)])
        expr.const -= 5
    elif rel.kind == 'P2':
        expr.add(l[(a.src, b.src)]).add(l[(b.src, u)]).add(l[(u, a.tgt)])
        expr.add(l[(v, a.tgt)], -1).add(l[(v, b.tgt)]).add(l[(v, c.tgt)])
        expr.const -= 5
    else:
        d, w = rel.delta, rel.w
        cotree_term(d)
        expr.add(l[(a.src, u)]).add(l[(u, v)]).add(l[(u, w)]).add(l[(u, a.tgt)]).add(l[(u, b.tgt)])
        expr.add(l[(v, a.tgt)]).add(l[(v, b.tgt)], -1).add(l[(v, c.tgt)]).add(l[(v, d.tgt)], -1)
        expr.add(l[(w, a.tgt)], -1).add(l[(w, b.tgt)]).add(l[(w, c.tgt)], -1).add(l[(w, d.tgt)])
        expr.const -= 9

    return expr


def _relation_constraint(
    g: WeightedGraph, index: LeftRightIndex, rel: ColoringRelation, assignment: Sequence[int]
) -> Optional[Constraint]:
    ra, rb = index.r[rel.alpha.edge], index.r[rel.beta.edge]
    color_a, color_b = assignment[ra], assignment[rb]
    p = _p_term(g, index, rel)
    name = f"lr_{rel.kind}_e{rel.alpha.edge}_e{rel.beta.edge}"

    if rel.same_color:
        if color_a == color_b:
            return None
        # r_hi - r_lo >= P 其中hi为当前取0的一方
        hi, lo = (ra, rb) if color_a == 0 else (rb, ra)
        terms = {var: -coef for var, coef in p.terms.items()}
        terms[hi] = terms.get(hi, 0) + 1
        terms[lo] = terms.get(lo, 0) - 1
        return Constraint(terms, GE, p.const, name)

    if color_a != color_b:
        return None
    if color_a == 0:
        terms = {var: -coef for var, coef in p.terms.items()}
        terms[ra] = terms.get(ra, 0) + 1
        terms[rb] = terms.get(rb, 0) + 1
        return Constraint(terms, GE, 1 + p.const, name)
    terms = dict(p.terms)
    terms[ra] = terms.get(ra, 0) + 1
    terms[rb] = terms.get(rb, 0) + 1
    return Constraint(terms, LE, 1 - p.const, name)


def tree_of(g: WeightedGraph, index: LeftRightIndex, assignment: Sequence[int], check_order: bool = True) -> TremauxTree:
    """
    由t与ℓ变量重建Trémaux树

    Raises:
        MalformedTree: t不是以根为根的生成树 或ℓ不是其祖先关系
    """

    parent = [-1] * g.n
    for arc, var in enumerate(index.t):
        if assignment[var]:
            tail, head = g.arc(arc)
            if parent[head] != -1:
                raise MalformedTree(f"node {head} has two tree parents")
            parent[head] = tail

    tree = TremauxTree(parent, index.root)
    if check_order:
        for (u, v), var in index.l.items():
            if bool(assignment[var]) != tree.le(u, v):
                raise MalformedTree(f"order variable l_{u}_{v} disagrees with the tree")
    return tree


def separate_bicoloring(
    g: WeightedGraph, index: LeftRightIndex, assignment: Sequence[int], limit: Optional[int] = 1000
) -> List[Constraint]:
    """
    在整数解上找出当前红蓝着色违反的同色/异色关系 每对余树边至多一条约束

    Args:
        g (WeightedGraph): 实例
        index (LeftRightIndex): 变量索引
        assignment (Sequence[int]): 整数解
        limit (int | None, optional): 每轮上限 None为不限. Defaults to 1000.

    Returns:
        list[Constraint]

    Raises:
        MalformedTree
    """

    tree = tree_of(g, index, assignment)
    sel = selection_of(g, assignment)
    cotree = cotree_edges(g, sel, tree)

    constraints = []
    seen = set()
    for rel in coloring_relations(tree, cotree):
        key = (rel.kind, min(rel.alpha.edge, rel.beta.edge), max(rel.alpha.edge, rel.beta.edge))
        if key in seen:
            continue
        constraint = _relation_constraint(g, index, rel, assignment)
        if constraint is None:
            continue
        if constraint.is_satisfied(assignment):
            LOG.warning(f"Failed to build a violated constraint for {rel}. reason:P-term is not tight")
            continue
        seen.add(key)
        constraints.append(constraint)
        if limit is not None and len(constraints) >= limit:
            break

    return constraints


def dfs_branch_rule(
    g: WeightedGraph, index: LeftRightIndex, state: NodeState, max_depth: Optional[int] = None
) -> List[List[Tuple[int, int]]]:
    """
    沿未删除的边按规范DFS序从根出发 找到第一条树弧未固定为1的边
    先探索 t=1且s_e=1 再探索 s_e=0

    Raises:
        NoFreeEdge: 所有树弧都已固定 或超过最大深度
    """

    if max_depth is not None and state.depth >= max_depth:
        raise NoFreeEdge(f"depth {state.depth} reached the limit")

    visited = [False] * g.n
    visited[index.root] = True
    stack = [[index.root, 0]]
    while stack:
        frame = stack[-1]
        u, pos = frame
        incident = g.incident(u)
        if pos == len(incident):
            stack.pop()
            continue
        frame[1] += 1

        w, idx = incident[pos]
        if visited[w] or state.upper(idx) == 0:
            continue
        t_var = index.t[g.arc_id(u, w)]
        if state.lower(t_var) == 1:
            visited[w] = True
            stack.append([w, 0])
            continue
        return [[(t_var, 1), (idx, 1)], [(idx, 0)]]

    raise NoFreeEdge("every tree arc is fixed")


def build_leftright_model(
    g: WeightedGraph, cfg: Optional[LeftRightConfig] = None, root: Optional[int] = None
) -> PBModel:
    """
    左右着色模型

    变量依次为 s_e, 弧变量t, 序变量ℓ(含ℓ_vv), 颜色变量r
    着色约束按需惰性分离

    Args:
        g (WeightedGraph): 连通实例 n>=3
        cfg (LeftRightConfig, optional): 开关. Defaults to LeftRightConfig.from_config().
        root (int, optional): 树根. Defaults to cfg.root.

    Returns:
        PBModel: meta['index']为LeftRightIndex

    Raises:
        Disconnected, TooFewNodes
    """

    check_nodes(g)
    if not is_connected(g):
        raise Disconnected(f"{g.name or g} is not connected")
    if cfg is None:
        cfg = LeftRightConfig.from_config()
    if root is None:
        root = cfg.root

    n = g.n
    index = LeftRightIndex(n, root)
    model = PBModel(f"leftright:{g.name or 'g'}")
    add_edge_vars(model, g)
    add_euler_row(model, g)

    index.t = [model.add_var(f"lr_t_{arc.tail}_{arc.head}") for arc in g.arcs()]
    for u in range(n):
        for v in range(n):
            index.l[(u, v)] = model.add_var(f"lr_l_{u}_{v}")
    index.r = [model.add_var(f"lr_r_e{idx}") for idx in range(g.m)]
    l, t = index.l, index.t

    model.eq({var: 1 for var in t}, n - 1, "lr_tree_size")
    for arc, arc_var in enumerate(t):
        tail, head = g.arc(arc)
        model.le({arc_var: 1, g.undirect(arc): -1}, 0)
        model.le({arc_var: 1, l[(tail, head)]: -1}, 0)

    for u in range(n):
        for v, w in itertools.combinations(g.neighbors(u), 2):
            model.le({l[(v, w)]: 1, l[(w, v)]: 1, t[g.arc_id(u, v)]: 1, t[g.arc_id(u, w)]: 1}, 2)

    for u, v in itertools.combinations(range(n), 2):
        for w in range(n):
            if w != u and w != v:
                model.le({l[(u, w)]: 1, l[(v, w)]: 1, l[(u, v)]: -1, l[(v, u)]: -1}, 1)
        model.le({l[(u, v)]: 1, l[(v, u)]: 1}, 1)

    for u, v, w in itertools.permutations(range(n), 3):
        model.le({l[(u, v)]: 1, l[(v, w)]: 1, l[(u, w)]: -1}, 1)

    for v in range(n):
        model.eq({l[(v, v)]: 1}, 1)
        model.eq({l[(root, v)]: 1}, 1)

    for idx, (u, v) in enumerate(g.edges):
        model.le({idx: 1, l[(u, v)]: -1, l[(v, u)]: -1}, 0)

    if cfg.symmetry_blue:
        for idx, (u, v) in enumerate(g.edges):
            model.le({t[2 * idx]: 1, t[2 * idx + 1]: 1, index.r[idx]: 1}, 1)
            model.le({index.r[idx]: 1, idx: -1}, 0)

    for v in range(n):
        model.eq({t[g.arc_id(w, v)]: 1 for w in g.neighbors(v)}, 0 if v == root else 1)

    if cfg.unique_tree:
        for u in range(n):
            for v, w in itertools.combinations(g.neighbors(u), 2):
                # uv <_π uw
                model.le({t[g.arc_id(u, w)]: 1, l[(w, v)]: 1, g.edge_id(u, v): 1}, 2)

    model.lazy_separator = functools.partial(
        separate_bicoloring, g, index, limit=cfg.max_coloring_constraints_per_round
    )
    model.comments.append("coloring constraints are separated lazily and not listed")
    if cfg.dfs_branching:
        model.branch_rule = BranchRule.custom(
            functools.partial(dfs_branch_rule, g, index, max_depth=cfg.dfs_branching_max_depth)
        )
    if cfg.selection_cuts:
        model.node_separator = SelectionCuts(g)
    install_weight_bound(model, g)

    model.meta['formulation'] = 'leftright'
    model.meta['index'] = index
    LOG.debug(f"Built {model}")
    return model


def canonical_dfs_tree(g: WeightedGraph, sel: EdgeSelection, root: int) -> Optional[TremauxTree]:
    """
    在选中边上从root出发按邻居id升序的递归DFS树 选择不连通时返回None
    """

    parent = [-1] * g.n
    visited = [False] * g.n
    visited[root] = True
    stack = [[root, 0]]
    while stack:
        frame = stack[-1]
        u, pos = frame
        incident = g.incident(u)
        if pos == len(incident):
            stack.pop()
            continue
        frame[1] += 1
        w, idx = incident[pos]
        if sel[idx] and not visited[w]:
            visited[w] = True
            parent[w] = u
            stack.append([w, 0])

    if not all(visited):
        return None
    return TremauxTree(parent, root)


def _two_coloring(relations: Sequence[ColoringRelation]) -> Optional[Dict[int, int]]:
    parent: Dict[int, int] = {}
    parity: Dict[int, int] = {}

    def find(x: int) -> Tuple[int, int]:
        if x not in parent:
            parent[x], parity[x] = x, 0
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        root = x
        acc = 0
        for node in reversed(path):
            acc ^= parity[node]
            parity[node] = acc
            parent[node] = root
        return root, (parity[path[0]] if path else 0)

    for rel in relations:
        want = 0 if rel.same_color else 1
        ra, pa = find(rel.alpha.edge)
        rb, pb = find(rel.beta.edge)
        if ra == rb:
            if pa ^ pb != want:
                return None
            continue
        parent[rb] = ra
        parity[rb] = pa ^ pb ^ want

    return {edge: find(edge)[1] for edge in list(parent)}


def decode(
    g: WeightedGraph, model: PBModel, assignment: Sequence[int]
) -> Tuple[EdgeSelection, Tuple[TremauxTree, Dict[int, int]]]:
    """
    Returns:
        tuple[EdgeSelection, tuple[TremauxTree, dict[int, int]]]: 选择 Trémaux树 余树边id->颜色(1为红)
    """

    index: LeftRightIndex = model.meta['index']
    sel = selection_of(g, assignment)
    tree = tree_of(g, index, assignment)
    colors = {e.edge: assignment[index.r[e.edge]] for e in cotree_edges(g, sel, tree)}
    return sel, (tree, colors)


def extend_warm_start(g: WeightedGraph, model: PBModel, sel: EdgeSelection) -> Optional[List[int]]:
    """
    规范DFS树 + 按同色/异色关系的二染色
    """

    index: LeftRightIndex = model.meta['index']
    tree = canonical_dfs_tree(g, sel, index.root)
    if tree is None:
        return None

    cotree = cotree_edges(g, sel, tree)
    colors = _two_coloring(list(coloring_relations(tree, cotree)))
    if colors is None:
        LOG.warning(f"Failed to color the cotree of {g.name or g}. reason:conflicting relations")
        return None

    assignment = [0] * model.num_vars
    for idx, bit in enumerate(sel):
        assignment[idx] = bit
    for v, u in enumerate(tree.parent):
        if u >= 0:
            assignment[index.t[g.arc_id(u, v)]] = 1
    for (u, v), var in index.l.items():
        assignment[var] = 1 if tree.le(u, v) else 0
    for edge, color in colors.items():
        assignment[index.r[edge]] = color

    return assignment
