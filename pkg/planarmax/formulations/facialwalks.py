# -*- coding:utf-8 -*-
__all__ = [
    'FacialWalkConfig',
    'FacialWalkIndex',
    'face_bound',
    'build_facialwalk_model',
    'separate_successor_cycles',
    'separate_partial_rotation',
    'rotation_branch_rule',
    'decode',
    'extend_warm_start',
]

import functools
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..config import CONFIG
from ..errors import NoFreeEdge, TooFewNodes
from ..logger import LOG
from ..pbsolver import GE, LE, BranchRule, Constraint, NodeState, PBModel
from ..planarity import test_planarity
from ..types import CombinatorialEmbedding, EdgeSelection, WeightedGraph, connected_components, girth
from .base import add_edge_vars, check_nodes, install_weight_bound, selection_of


class FacialWalkConfig(object):
    """
    面行走模型的开关

    Args:
        force_first_three_faces (bool, optional): x_0=x_1=x_2=1. Defaults to True.
        symmetry_faces_descending (bool, optional): x_i>=x_{i+1}. Defaults to True.
        degree3_specialization (bool | None, optional): 度为3的节点只用一个后继变量. Defaults to None(由profile决定).
        profile (str, optional): 'pbs'或'ilp' 'ilp'默认开启度3特化. Defaults to 'pbs'.
        rotation_branching (bool, optional): 选边后逐节点构造旋转 再按贪心面标号分支. Defaults to True.
        face_count_cuts (bool, optional): 由部分旋转追踪面 面数上界不足时剪枝. Defaults to True.
    """

    __slots__ = [
        'force_first_three_faces',
        'symmetry_faces_descending',
        'degree3_specialization',
        'profile',
        'rotation_branching',
        'face_count_cuts',
    ]

    def __init__(
        self,
        force_first_three_faces: bool = True,
        symmetry_faces_descending: bool = True,
        degree3_specialization: Optional[bool] = None,
        profile: str = 'pbs',
        rotation_branching: bool = True,
        face_count_cuts: bool = True,
    ) -> None:
        if profile not in ('pbs', 'ilp'):
            raise ValueError(f"unknown profile {profile}")
        self.force_first_three_faces: bool = force_first_three_faces
        self.symmetry_faces_descending: bool = symmetry_faces_descending
        self.profile: str = profile
        if degree3_specialization is None:
            degree3_specialization = profile == 'ilp'
        self.degree3_specialization: bool = degree3_specialization
        self.rotation_branching: bool = rotation_branching
        self.face_count_cuts: bool = face_count_cuts

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [profile:{self.profile} / degree3:{self.degree3_specialization} / "
            f"first_three:{self.force_first_three_faces} / descending:{self.symmetry_faces_descending} / "
            f"rotation_branching:{self.rotation_branching} / face_count_cuts:{self.face_count_cuts}]"
        )

    @classmethod
    def from_config(cls, table: Optional[Mapping] = None) -> "FacialWalkConfig":
        if table is None:
            table = CONFIG['FacialWalks']
        return cls(
            force_first_three_faces=table.get('force_first_three_faces', True),
            symmetry_faces_descending=table.get('symmetry_faces_descending', True),
            degree3_specialization=table.get('degree3_specialization'),
            profile=table.get('profile', 'pbs'),
            rotation_branching=table.get('rotation_branching', True),
            face_count_cuts=table.get('face_count_cuts', True),
        )


class FacialWalkIndex(object):
    """
    变量id索引

    Fields:
        face_bound (int): 面数上界
        girth (int | None): 宿主图的围长 无环时为None
        x (list[int]): x_i
        c (list[list[int]]): c[i][arc]
        p (dict[tuple[int, int, int], int]): (v, u, w) -> p^v_{u,w}
        p3 (dict[int, int]): 度3特化节点v -> p^v 取1表示循环序(u0,u1,u2)
    """

    __slots__ = ['face_bound', 'girth', 'x', 'c', 'p', 'p3']

    def __init__(self, face_bound: int, girth: Optional[int] = None) -> None:
        self.face_bound: int = face_bound
        self.girth: Optional[int] = girth
        self.x: List[int] = []
        self.c: List[List[int]] = []
        self.p: Dict[Tuple[int, int, int], int] = {}
        self.p3: Dict[int, int] = {}


def face_bound(g: WeightedGraph) -> int:
    """
    可达面数的上界 2-n+min(m, 3n-6)

    Raises:
        TooFewNodes
    """

    if g.n < 3:
        raise TooFewNodes(f"face bound needs n>=3, got {g.n}")
    return 2 - g.n + min(g.m, 3 * g.n - 6)


def _add_degree3(model: PBModel, g: WeightedGraph, index: FacialWalkIndex, v: int) -> None:
    nbrs = g.neighbors(v)
    p = index.p3[v]
    s = [g.edge_id(v, u) for u in nbrs]

    def into(j: int) -> int:
        return g.arc_id(nbrs[j % 3], v)

    def out(j: int) -> int:
        return g.arc_id(v, nbrs[j % 3])

    for c in index.c:
        for j in range(3):
            s0, s1, s2 = s[j], s[(j + 1) % 3], s[(j + 2) % 3]
            # p=1: u_j之后是u_{j+1} 缺u_{j+1}时是u_{j+2}
            model.le({c[into(j)]: 1, c[out(j + 1)]: -1, p: 1, s1: 1}, 2)
            model.le({c[into(j)]: 1, c[out(j + 2)]: -1, p: 1, s2: 1, s1: -1}, 2)
            model.le({c[out(j + 1)]: 1, c[into(j)]: -1, p: 1, s0: 1}, 2)
            model.le({c[out(j + 2)]: 1, c[into(j)]: -1, p: 1, s0: 1, s1: -1}, 2)
            # p=0: u_{j+1}之后是u_j 缺u_{j+1}时u_{j+2}之后是u_j
            model.le({c[into(j + 1)]: 1, c[out(j)]: -1, p: -1, s0: 1}, 1)
            model.le({c[into(j + 2)]: 1, c[out(j)]: -1, p: -1, s0: 1, s1: -1}, 1)
            model.le({c[out(j)]: 1, c[into(j + 1)]: -1, p: -1, s1: 1}, 1)
            model.le({c[out(j)]: 1, c[into(j + 2)]: -1, p: -1, s2: 1, s1: -1}, 1)


def build_facialwalk_model(g: WeightedGraph, cfg: Optional[FacialWalkConfig] = None) -> PBModel:
    """
    面行走模型

    变量依次为 s_e, x_i, 后继变量p, 弧-面变量c
    后继环约束按需惰性分离 选边固定后逐节点构造旋转 并按追踪到的面数剪枝

    Args:
        g (WeightedGraph): 实例 n>=3
        cfg (FacialWalkConfig, optional): 开关. Defaults to FacialWalkConfig.from_config().

    Returns:
        PBModel: meta['index']为FacialWalkIndex

    Raises:
        TooFewNodes
    """

    check_nodes(g)
    if cfg is None:
        cfg = FacialWalkConfig.from_config()

    fbar = max(0, face_bound(g))
    index = FacialWalkIndex(fbar, girth(g))
    model = PBModel(f"facialwalks:{g.name or 'g'}")
    add_edge_vars(model, g)

    index.x = [model.add_var(f"fw_x{i}") for i in range(fbar)]

    specialized = set()
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if cfg.degree3_specialization and len(nbrs) == 3:
            index.p3[v] = model.add_var(f"fw_p{v}")
            specialized.add(v)
            continue
        for u in nbrs:
            for w in nbrs:
                index.p[(v, u, w)] = model.add_var(f"fw_p{v}_{u}_{w}")

    index.c = [[model.add_var(f"fw_c{i}_a{arc}") for arc in range(g.arc_count)] for i in range(fbar)]

    s_all = {idx: -1 for idx in range(g.m)}
    model.eq({**{x: 1 for x in index.x}, **s_all}, 2 - g.n, "euler")

    if cfg.force_first_three_faces:
        for x in index.x[:3]:
            model.eq({x: 1}, 1)
    if cfg.symmetry_faces_descending:
        for x0, x1 in zip(index.x, index.x[1:]):
            model.ge({x0: 1, x1: -1}, 0)

    for x, c in zip(index.x, index.c):
        terms = {arc_var: 1 for arc_var in c}
        terms[x] = -3
        model.ge(terms, 0)
        for arc_var in c:
            model.le({arc_var: 1, x: -1}, 0)

    for arc in range(g.arc_count):
        terms = {c[arc]: 1 for c in index.c}
        terms[g.undirect(arc)] = -1
        model.eq(terms, 0)

    for c in index.c:
        for v in range(g.n):
            terms: Dict[int, int] = {}
            for u in g.neighbors(v):
                terms[c[g.arc_id(u, v)]] = 1
                terms[c[g.arc_id(v, u)]] = -1
            model.eq(terms, 0)

    for v in range(g.n):
        if v in specialized:
            _add_degree3(model, g, index, v)
            continue
        nbrs = g.neighbors(v)
        for u in nbrs:
            for w in nbrs:
                p = index.p[(v, u, w)]
                uv, vw = g.arc_id(u, v), g.arc_id(v, w)
                for c in index.c:
                    model.le({c[uv]: 1, p: 1, c[vw]: -1}, 1)
                    model.le({c[vw]: 1, p: 1, c[uv]: -1}, 1)
        for u in nbrs:
            out = {index.p[(v, u, w)]: 1 for w in nbrs}
            out[g.edge_id(v, u)] = -1
            model.eq(out, 0)
            into = {index.p[(v, w, u)]: 1 for w in nbrs}
            into[g.edge_id(v, u)] = -1
            model.eq(into, 0)

    model.lazy_separator = functools.partial(separate_successor_cycles, g, index)
    model.comments.append("successor cycle cuts are separated lazily and not listed")
    if cfg.rotation_branching:
        model.branch_rule = BranchRule.custom(functools.partial(rotation_branch_rule, g, index))
    if cfg.face_count_cuts:
        model.node_separator = functools.partial(separate_partial_rotation, g, index)
    install_weight_bound(model, g)
    model.meta['formulation'] = 'facialwalks'
    model.meta['index'] = index
    LOG.debug(f"Built {model}")
    return model


def _cycles(g: WeightedGraph, index: FacialWalkIndex, v: int, assignment: Sequence[int]) -> List[List[int]]:
    nbrs = g.neighbors(v)
    selected = [u for u in nbrs if assignment[g.edge_id(v, u)]]
    succ = {}
    for u in selected:
        for w in nbrs:
            if assignment[index.p[(v, u, w)]]:
                succ[u] = w
                break

    cycles = []
    seen = set()
    for start in selected:
        if start in seen:
            continue
        cycle = []
        cur = start
        while cur not in seen and cur in succ:
            seen.add(cur)
            cycle.append(cur)
            cur = succ[cur]
        if cycle:
            cycles.append(cycle)
    return cycles


def _cycle_cut(
    g: WeightedGraph, index: FacialWalkIndex, v: int, cycle: Sequence[int], selected: Sequence[int]
) -> Constraint:
    nbrs = g.neighbors(v)
    inside = set(cycle)
    u = min(cycle)
    u_tilde = min(w for w in selected if w not in inside)
    terms = {index.p[(v, a, b)]: 1 for a in nbrs if a in inside for b in nbrs if b not in inside}
    terms[g.edge_id(v, u)] = -1
    terms[g.edge_id(v, u_tilde)] = -1
    return Constraint(terms, GE, -1, f"fw_cut{v}_{u}")


def separate_successor_cycles(g: WeightedGraph, index: FacialWalkIndex, assignment: Sequence[int]) -> List[Constraint]:
    """
    后继关系在某节点处分裂成多个环时 为每个多余的环生成一条割约束
    p^v(U x N(v)\\U) >= s_vu + s_vũ - 1

    Args:
        g (WeightedGraph): 实例
        index (FacialWalkIndex): 变量索引
        assignment (Sequence[int]): 整数解

    Returns:
        list[Constraint]
    """

    constraints = []
    for v in range(g.n):
        if v in index.p3 or g.degree(v) < 2:
            continue
        cycles = _cycles(g, index, v, assignment)
        if len(cycles) < 2:
            continue

        first = min(min(cycle) for cycle in cycles)
        selected = [u for cycle in cycles for u in cycle]
        for cycle in cycles:
            if first not in cycle:
                constraints.append(_cycle_cut(g, index, v, cycle, selected))

    return constraints


def _selected_at(g: WeightedGraph, v: int, state: NodeState) -> List[int]:
    return [u for u in g.neighbors(v) if state.lower(g.edge_id(v, u))]


def _fixed_successors(
    g: WeightedGraph, index: FacialWalkIndex, v: int, selected: Sequence[int], state: NodeState
) -> Dict[int, int]:
    succ = {}
    for u in selected:
        for w in selected:
            if state.lower(index.p[(v, u, w)]):
                succ[u] = w
                break
    return succ


def _known_successors(
    g: WeightedGraph, index: FacialWalkIndex, v: int, selected: Sequence[int], state: NodeState
) -> Tuple[Dict[int, int], List[Tuple[int, int]]]:
    """
    当前节点在v处已确定的后继 以及决定它们的(var, value)

    至多两个选中邻居时旋转唯一 不依赖任何后继变量
    """

    if len(selected) <= 2:
        return {u: selected[(k + 1) % len(selected)] for k, u in enumerate(selected)}, []

    if v in index.p3:
        value = state.value(index.p3[v])
        if value is None:
            return {}, []
        nbrs = g.neighbors(v)
        order = list(nbrs) if value else [nbrs[0], nbrs[2], nbrs[1]]
        return {u: order[(k + 1) % 3] for k, u in enumerate(order)}, [(index.p3[v], value)]

    succ = _fixed_successors(g, index, v, selected, state)
    return succ, [(index.p[(v, u, w)], 1) for u, w in succ.items()]


def _premature_cycle(succ: Mapping[int, int], selected: Sequence[int]) -> Optional[List[int]]:
    seen = set()
    for start in selected:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        cur = succ.get(start)
        while cur is not None and cur != start and cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            cur = succ.get(cur)
        if cur == start and len(cycle) < len(selected):
            return cycle
    return None


def _trace_faces(
    g: WeightedGraph, rotation: Mapping[int, Mapping[int, int]], arcs: Sequence[int]
) -> Tuple[List[List[int]], List[List[int]]]:
    """
    按已知后继追踪弧 (u,v) -> (v, succ_v(u))

    Returns:
        tuple[list[list[int]], list[list[int]]]: 闭合的面 以及尚未闭合的弧链
    """

    nxt: Dict[int, int] = {}
    for arc in arcs:
        u, v = g.arc(arc)
        w = rotation[v].get(u)
        if w is not None:
            nxt[arc] = g.arc_id(v, w)

    visited = set()
    chains = []
    for arc in sorted(set(arcs) - set(nxt.values())):
        chain = []
        while arc is not None:
            visited.add(arc)
            chain.append(arc)
            arc = nxt.get(arc)
        chains.append(chain)

    faces = []
    for arc in arcs:
        if arc in visited:
            continue
        face = []
        while arc not in visited:
            visited.add(arc)
            face.append(arc)
            arc = nxt[arc]
        faces.append(face)

    return faces, chains


def _selection_faces_bound(g: WeightedGraph, index: FacialWalkIndex, sel: EdgeSelection) -> Tuple[int, int]:
    """
    只由选边决定的面数上界

    每个树分量恰有一个面 其余分量的每个面都含一个环 至少占2-core的girth条弧

    Returns:
        tuple[int, int]: 面数上界 与面长的下界
    """

    trees = 0
    for component in connected_components(g, sel):
        if len(component) < 2:
            continue
        inside = set(component)
        edges = sum(1 for idx in sel.selected() if g.edges[idx][0] in inside)
        if edges == len(component) - 1:
            trees += 1

    degree = [0] * g.n
    for idx in sel.selected():
        u, v = g.edges[idx]
        degree[u] += 1
        degree[v] += 1
    alive = set(sel.selected())
    leaves = [v for v in range(g.n) if degree[v] == 1]
    while leaves:
        v = leaves.pop()
        if degree[v] != 1:
            continue
        for u in g.neighbors(v):
            idx = g.edge_id(v, u)
            if idx in alive:
                alive.discard(idx)
                degree[v] -= 1
                degree[u] -= 1
                if degree[u] == 1:
                    leaves.append(u)
                break

    core_faces = 0
    if index.girth is not None:
        core_faces = 2 * len(alive) // index.girth
    shortest = 2 if trees or index.girth is None else index.girth
    return trees + core_faces, shortest


def separate_partial_rotation(g: WeightedGraph, index: FacialWalkIndex, state: NodeState) -> List[Constraint]:
    """
    选边全部固定后的节点割

    某节点处已固定的后继提前闭合成环时返回后继环约束
    否则按已知旋转追踪面 面数上界小于2-n+|S|时返回禁止当前选边(及已固定后继)的no-good

    Args:
        g (WeightedGraph): 实例
        index (FacialWalkIndex): 变量索引
        state (NodeState): 当前节点

    Returns:
        list[Constraint]: 空表示不剪枝
    """

    if any(state.is_free(idx) for idx in range(g.m)):
        return []

    sel = EdgeSelection(state.lower(idx) for idx in range(g.m))
    need = 2 - g.n + sel.count
    if need <= 0:
        return []

    s_terms = {idx: 1 if bit else -1 for idx, bit in enumerate(sel)}
    bound, shortest = _selection_faces_bound(g, index, sel)
    if bound < need:
        return [Constraint(s_terms, LE, sel.count - 1, f"fw_faces_s{need}")]

    rotation = {}
    literals: List[Tuple[int, int]] = []
    for v in range(g.n):
        selected = _selected_at(g, v, state)
        if v not in index.p3 and len(selected) >= 2:
            cycle = _premature_cycle(_fixed_successors(g, index, v, selected, state), selected)
            if cycle is not None:
                return [_cycle_cut(g, index, v, cycle, selected)]
        rotation[v], fixed = _known_successors(g, index, v, selected, state)
        literals.extend(fixed)

    arcs = [arc for idx in sel.selected() for arc in (2 * idx, 2 * idx + 1)]
    faces, chains = _trace_faces(g, rotation, arcs)
    open_arcs = sum(len(chain) for chain in chains)
    if len(faces) + min(len(chains), open_arcs // shortest) >= need:
        return []

    terms = dict(s_terms)
    ones = sel.count
    for var, value in literals:
        terms[var] = 1 if value else -1
        ones += value
    return [Constraint(terms, LE, ones - 1, f"fw_faces_r{need}")]


def _greedy_labels(faces: Sequence[Sequence[int]], need: int) -> Optional[List[List[int]]]:
    # 长面各占一个标号 短面攒够3条弧再占一个 多出的面并入最后一个标号
    groups: List[List[int]] = []
    pending: List[int] = []
    for face in sorted(faces, key=lambda face: (-len(face), face[0])):
        if len(groups) == need:
            groups[-1].extend(face)
            continue
        pending.extend(face)
        if len(pending) >= 3:
            groups.append(pending)
            pending = []
    if pending:
        if not groups:
            return None
        groups[-1].extend(pending)
    if len(groups) < need:
        return None
    return groups


def rotation_branch_rule(g: WeightedGraph, index: FacialWalkIndex, state: NodeState) -> List[List[Tuple[int, int]]]:
    """
    选边固定后逐节点延长旋转: 从最小的选中邻居出发沿已定后继走到链尾 对链尾的每个合法后继开一个子节点
    旋转确定后按贪心面标号依次分支x与c 先取标号给出的值

    Raises:
        NoFreeEdge: 仍有自由的边变量 或无法给出合法的分支 交给默认规则
    """

    if any(state.is_free(idx) for idx in range(g.m)):
        raise NoFreeEdge("edge variables are free")

    rotation = {}
    for v in range(g.n):
        selected = _selected_at(g, v, state)

        if v in index.p3:
            p3 = index.p3[v]
            if state.is_free(p3):
                # 少于三个邻居时两种取值给出同一旋转
                return [[(p3, 1)], [(p3, 0)]] if len(selected) == 3 else [[(p3, 1)]]
            rotation[v], _ = _known_successors(g, index, v, selected, state)
            continue

        succ = _fixed_successors(g, index, v, selected, state)
        if len(succ) == len(selected):
            rotation[v] = succ
            continue

        start = min(selected)
        chain = [start]
        cur = start
        while cur in succ:
            cur = succ[cur]
            if cur == start:
                raise NoFreeEdge(f"successors at {v} close early")
            chain.append(cur)

        in_chain = set(chain)
        remaining = [w for w in selected if w not in in_chain] or [start]
        children = []
        for w in remaining:
            if not state.is_free(index.p[(v, cur, w)]):
                continue
            tail = w
            size = len(chain)
            while tail in succ and tail != start:
                tail = succ[tail]
                size += 1
            if tail == start and w != start and size < len(selected):
                continue
            children.append([(index.p[(v, cur, w)], 1)])
        if not children:
            raise NoFreeEdge(f"no successor left for {cur} at {v}")
        return children

    sel = EdgeSelection(state.lower(idx) for idx in range(g.m))
    need = 2 - g.n + sel.count
    if need <= 0 or need > len(index.x):
        raise NoFreeEdge(f"{need} faces cannot be labeled")

    arcs = [arc for idx in sel.selected() for arc in (2 * idx, 2 * idx + 1)]
    faces, _ = _trace_faces(g, rotation, arcs)
    groups = _greedy_labels(faces, need)
    if groups is None:
        raise NoFreeEdge(f"{len(faces)} faces cannot fill {need} labels")

    wanted = {x: int(i < need) for i, x in enumerate(index.x)}
    for i, c in enumerate(index.c):
        members = set(groups[i]) if i < need else set()
        for arc, var in enumerate(c):
            wanted[var] = int(arc in members)
    for var in sorted(wanted):
        if state.is_free(var):
            return [[(var, wanted[var])], [(var, 1 - wanted[var])]]

    raise NoFreeEdge("rotation and labels are fixed")


def _rotation_at(g: WeightedGraph, index: FacialWalkIndex, v: int, assignment: Sequence[int]) -> List[int]:
    nbrs = g.neighbors(v)
    selected = [u for u in nbrs if assignment[g.edge_id(v, u)]]
    if v in index.p3:
        order = list(nbrs) if assignment[index.p3[v]] else [nbrs[0], nbrs[2], nbrs[1]]
        return [u for u in order if u in selected]
    cycles = _cycles(g, index, v, assignment)
    return cycles[0] if cycles else []


def decode(g: WeightedGraph, model: PBModel, assignment: Sequence[int]) -> Tuple[EdgeSelection, CombinatorialEmbedding]:
    """
    由后继变量解出旋转系统

    Returns:
        tuple[EdgeSelection, CombinatorialEmbedding]
    """

    index: FacialWalkIndex = model.meta['index']
    rotation = {v: _rotation_at(g, index, v, assignment) for v in range(g.n)}
    return selection_of(g, assignment), CombinatorialEmbedding(rotation)


def extend_warm_start(g: WeightedGraph, model: PBModel, sel: EdgeSelection) -> Optional[List[int]]:
    """
    由平面选择的组合嵌入构造完整解 面数超过上界或选择不连通时返回None
    """

    index: FacialWalkIndex = model.meta['index']
    result = test_planarity(g, sel)
    if not result.is_planar:
        return None
    emb = result.embedding

    faces = emb.faces() if emb.rotation else []
    if len(faces) > index.face_bound or len(faces) != 2 - g.n + sel.count:
        return None

    assignment = [0] * model.num_vars
    for idx, bit in enumerate(sel):
        assignment[idx] = bit
    for i, face in enumerate(faces):
        assignment[index.x[i]] = 1
        for u, v in face:
            assignment[index.c[i][g.arc_id(u, v)]] = 1

    for v in range(g.n):
        rotation = emb.rotation.get(v, ())
        if v in index.p3:
            nbrs = g.neighbors(v)
            value = 1
            if len(rotation) == 3 and emb.successor(v, nbrs[0]) != nbrs[1]:
                value = 0
            assignment[index.p3[v]] = value
            continue
        for u in rotation:
            assignment[index.p[(v, u, emb.successor(v, u))]] = 1

    return assignment
