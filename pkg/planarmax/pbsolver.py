# -*- coding:utf-8 -*-
__all__ = [
    'LE',
    'GE',
    'EQ',
    'Constraint',
    'PBModel',
    'SolveStatus',
    'SolveStats',
    'SolveResult',
    'Limits',
    'BranchRule',
    'NodeState',
    'PBSolver',
    'solve',
    'extend_assignment',
]

import enum
import time
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .config import CONFIG
from .errors import InfeasibleWarmStart, LimitExceeded, NoFreeEdge, SeparatorContractViolation
from .logger import LOG

try:
    import resource
except ImportError:  # pragma: no cover
    resource = None

LE = '<='
GE = '>='
EQ = '='

Terms = Union[Mapping[int, int], Iterable[Tuple[int, int]]]


class Constraint(object):
    """
    整系数线性约束 sum(coef * x_var) <sense> rhs

    Args:
        terms (dict[int, int] | Iterable[tuple[int, int]]): var -> coef 或 (coef, var) 序列 同一变量的系数会合并
        sense (str): '<=' / '>=' / '='
        rhs (int): 右端项
        name (str, optional): 约束名. Defaults to ''.

    Fields:
        terms (tuple[tuple[int, int], ...]): 按变量id升序的(coef, var) 不含零系数
        sense (str)
        rhs (int)
        name (str)
    """

    __slots__ = ['terms', 'sense', 'rhs', 'name']

    def __init__(self, terms: Terms, sense: str, rhs: int, name: str = '') -> None:
        if sense not in (LE, GE, EQ):
            raise ValueError(f"unknown comparator {sense}")

        merged: Dict[int, int] = {}
        if isinstance(terms, Mapping):
            items = ((coef, var) for var, coef in terms.items())
        else:
            items = terms
        for coef, var in items:
            merged[var] = merged.get(var, 0) + int(coef)

        self.terms: Tuple[Tuple[int, int], ...] = tuple((coef, var) for var, coef in sorted(merged.items()) if coef)
        self.sense: str = sense
        self.rhs: int = int(rhs)
        self.name: str = name

    def __repr__(self) -> str:
        lhs = ' '.join(f"{coef:+d}x{var}" for coef, var in self.terms)
        return f"{self.__class__.__name__} [{self.name}: {lhs} {self.sense} {self.rhs}]"

    def __eq__(self, obj: "Constraint") -> bool:
        return self.terms == obj.terms and self.sense == obj.sense and self.rhs == obj.rhs

    def __hash__(self) -> int:
        return hash((self.terms, self.sense, self.rhs))

    def __len__(self) -> int:
        return len(self.terms)

    def activity(self, assignment: Sequence[int]) -> int:
        return sum(coef * assignment[var] for coef, var in self.terms)

    def violation(self, assignment: Sequence[int]) -> int:
        """
        Returns:
            int: 违反量 满足时为0
        """

        act = self.activity(assignment)
        if self.sense == LE:
            return max(0, act - self.rhs)
        if self.sense == GE:
            return max(0, self.rhs - act)
        return abs(act - self.rhs)

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return self.violation(assignment) == 0

    def rows(self) -> List[Tuple[Tuple[Tuple[int, int], ...], int]]:
        """
        规范化为若干 sum <= rhs 行
        """

        negated = tuple((-coef, var) for coef, var in self.terms)
        if self.sense == LE:
            return [(self.terms, self.rhs)]
        if self.sense == GE:
            return [(negated, -self.rhs)]
        return [(self.terms, self.rhs), (negated, -self.rhs)]


Separator = Callable[[Sequence[int]], List[Constraint]]


class PBModel(object):
    """
    0-1线性模型 目标为最大化 可挂载惰性约束分离器与分支规则

    Args:
        name (str, optional): 模型名. Defaults to ''.

    Fields:
        name (str)
        objective (dict[int, int]): var -> 目标系数
        constraints (list[Constraint]): 显式约束 按加入顺序
        lazy_separator (Callable[[Sequence[int]], list[Constraint]] | None): 整数解 -> 新约束
        node_separator (Callable[[NodeState], list[Constraint]] | None): 部分赋值 -> 剪掉当前节点的全局有效约束
        node_bound (Callable[[NodeState], int | None] | None): 部分赋值 -> 目标上界 None表示无可行补全
        branch_rule (BranchRule | None): 分支规则 None时使用默认规则
        warm_start (list[int] | None): 完整的初始可行解
        comments (list[str]): 导出时写在文件头的注释
        meta (dict): 建模模块记录的索引信息
    """

    __slots__ = [
        'name',
        'objective',
        'constraints',
        'lazy_separator',
        'node_separator',
        'node_bound',
        'branch_rule',
        'warm_start',
        'comments',
        'meta',
        '_var_names',
        '_var_index',
    ]

    def __init__(self, name: str = '') -> None:
        self.name: str = name
        self.objective: Dict[int, int] = {}
        self.constraints: List[Constraint] = []
        self.lazy_separator: Optional[Separator] = None
        self.node_separator: Optional[Callable[["NodeState"], List[Constraint]]] = None
        self.node_bound: Optional[Callable[["NodeState"], Optional[int]]] = None
        self.branch_rule: Optional[BranchRule] = None
        self.warm_start: Optional[List[int]] = None
        self.comments: List[str] = []
        self.meta: Dict = {}

        self._var_names: List[str] = []
        self._var_index: Dict[str, int] = {}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.name} / vars:{self.num_vars} / constraints:{len(self.constraints)}]"

    @property
    def num_vars(self) -> int:
        return len(self._var_names)

    @property
    def var_names(self) -> List[str]:
        return list(self._var_names)

    def add_var(self, name: str, obj: int = 0) -> int:
        """
        新增二值变量

        Args:
            name (str): 唯一的变量名
            obj (int, optional): 目标系数. Defaults to 0.

        Returns:
            int: 变量id
        """

        if name in self._var_index:
            raise ValueError(f"duplicate variable name {name}")
        idx = len(self._var_names)
        self._var_names.append(name)
        self._var_index[name] = idx
        if obj:
            self.objective[idx] = int(obj)
        return idx

    def var(self, name: str) -> int:
        return self._var_index[name]

    def name_of(self, idx: int) -> str:
        return self._var_names[idx]

    def add_constraint(self, terms: Terms, sense: str, rhs: int, name: str = '') -> Optional[Constraint]:
        """
        新增显式约束 恒满足的空约束被忽略

        Returns:
            Constraint | None
        """

        constraint = Constraint(terms, sense, rhs, name)
        if not constraint.terms and constraint.violation(()) == 0:
            return None
        self.constraints.append(constraint)
        return constraint

    def le(self, terms: Terms, rhs: int, name: str = '') -> Optional[Constraint]:
        return self.add_constraint(terms, LE, rhs, name)

    def ge(self, terms: Terms, rhs: int, name: str = '') -> Optional[Constraint]:
        return self.add_constraint(terms, GE, rhs, name)

    def eq(self, terms: Terms, rhs: int, name: str = '') -> Optional[Constraint]:
        return self.add_constraint(terms, EQ, rhs, name)

    def fix(self, var: int, value: int) -> Optional[Constraint]:
        return self.add_constraint({var: 1}, EQ, value, f"fix_{self._var_names[var]}")

    def objective_value(self, assignment: Sequence[int]) -> int:
        return sum(coef * assignment[var] for var, coef in self.objective.items())

    def is_feasible(self, assignment: Sequence[int]) -> bool:
        """
        仅检查显式约束
        """

        return len(assignment) == self.num_vars and all(c.is_satisfied(assignment) for c in self.constraints)

    def is_satisfied(self, assignment: Sequence[int], lazy: Iterable[Constraint] = ()) -> bool:
        """
        检查显式约束与给定的惰性约束
        """

        return self.is_feasible(assignment) and all(c.is_satisfied(assignment) for c in lazy)

    def structurally_equal(self, obj: "PBModel") -> bool:
        """
        变量名 目标与约束(不含约束名)逐项相同
        """

        return (
            self._var_names == obj._var_names
            and {k: v for k, v in self.objective.items() if v} == {k: v for k, v in obj.objective.items() if v}
            and self.constraints == obj.constraints
        )


class SolveStatus(enum.Enum):
    OPTIMAL = 'Optimal'
    TIME_LIMIT = 'TimeLimit'
    NODE_LIMIT = 'NodeLimit'
    MEMORY_LIMIT = 'MemoryLimit'
    INFEASIBLE = 'Infeasible'


class SolveStats(object):
    """
    求解统计

    Fields:
        bnb_nodes (int): 分支定界节点数
        lazy_constraints_added (int): 惰性约束数
        separator_calls (int): 分离器调用次数
        wall_time (float): 秒
    """

    __slots__ = ['bnb_nodes', 'lazy_constraints_added', 'separator_calls', 'wall_time']

    def __init__(self) -> None:
        self.bnb_nodes: int = 0
        self.lazy_constraints_added: int = 0
        self.separator_calls: int = 0
        self.wall_time: float = 0.0

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [nodes:{self.bnb_nodes} / lazy:{self.lazy_constraints_added} / "
            f"separator_calls:{self.separator_calls} / time:{self.wall_time:.3f}s]"
        )


class SolveResult(object):
    """
    求解结果

    Fields:
        status (SolveStatus)
        incumbent (list[int] | None): 最优(或当前最好)解
        objective_value (int | None): incumbent的目标值
        dual_bound (int | None): 对偶界 总有objective_value<=dual_bound
        stats (SolveStats)
        lazy_constraints (list[Constraint]): 求解过程中加入的全部惰性约束
    """

    __slots__ = ['status', 'incumbent', 'objective_value', 'dual_bound', 'stats', 'lazy_constraints']

    def __init__(
        self,
        status: SolveStatus,
        incumbent: Optional[List[int]],
        objective_value: Optional[int],
        dual_bound: Optional[int],
        stats: SolveStats,
        lazy_constraints: Optional[List[Constraint]] = None,
    ) -> None:
        self.status: SolveStatus = status
        self.incumbent: Optional[List[int]] = incumbent
        self.objective_value: Optional[int] = objective_value
        self.dual_bound: Optional[int] = dual_bound
        self.stats: SolveStats = stats
        self.lazy_constraints: List[Constraint] = lazy_constraints or []

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [{self.status.value} / objective:{self.objective_value} / "
            f"dual:{self.dual_bound} / {self.stats}]"
        )

    @property
    def is_optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL

    def raise_for_status(self) -> None:
        """
        Raises:
            LimitExceeded: 因上限而终止
        """

        if self.status not in (SolveStatus.OPTIMAL, SolveStatus.INFEASIBLE):
            raise LimitExceeded(self)


class Limits(object):
    """
    求解上限

    Args:
        time (float | None, optional): 秒. Defaults to None.
        memory (int | None, optional): MB 进程峰值常驻内存. Defaults to None.
        nodes (int | None, optional): 分支定界节点数. Defaults to None.
    """

    __slots__ = ['time', 'memory', 'nodes']

    def __init__(self, time: Optional[float] = None, memory: Optional[int] = None, nodes: Optional[int] = None) -> None:
        self.time: Optional[float] = time
        self.memory: Optional[int] = memory
        self.nodes: Optional[int] = nodes

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [time:{self.time} / memory:{self.memory} / nodes:{self.nodes}]"

    @classmethod
    def from_config(cls, table: Optional[Mapping] = None) -> "Limits":
        if table is None:
            table = CONFIG['Solver']
        return cls(
            time=table.get('time_limit', 60.0), memory=table.get('memory_limit', 1024), nodes=table.get('node_limit')
        )

    def remaining(self, elapsed: float) -> "Limits":
        time_left = None if self.time is None else max(0.0, self.time - elapsed)
        return Limits(time_left, self.memory, self.nodes)


class NodeState(object):
    """
    分支规则可见的当前节点

    Fields:
        depth (int): 分支深度 根为0
    """

    __slots__ = ['_values', 'depth']

    def __init__(self, values: List[int], depth: int) -> None:
        self._values = values
        self.depth: int = depth

    def value(self, var: int) -> Optional[int]:
        """
        Returns:
            int | None: 已固定的值 自由时为None
        """

        val = self._values[var]
        return None if val < 0 else val

    def is_free(self, var: int) -> bool:
        return self._values[var] < 0

    def lower(self, var: int) -> int:
        return 1 if self._values[var] == 1 else 0

    def upper(self, var: int) -> int:
        return 0 if self._values[var] == 0 else 1


Children = List[List[Tuple[int, int]]]


class BranchRule(object):
    """
    分支规则

    Args:
        kind (str): 'default' 或 'custom'
        callback (Callable[[NodeState], list[list[tuple[int, int]]]], optional): \
            返回按探索顺序排列的子节点 每个子节点为(var, value)固定列表 无可用分支时抛出NoFreeEdge回退到默认规则
    """

    __slots__ = ['kind', 'callback']

    def __init__(self, kind: str = 'default', callback: Optional[Callable[[NodeState], Children]] = None) -> None:
        self.kind: str = kind
        self.callback: Optional[Callable[[NodeState], Children]] = callback

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.kind}]"

    @classmethod
    def default(cls) -> "BranchRule":
        return cls('default')

    @classmethod
    def custom(cls, callback: Callable[[NodeState], Children]) -> "BranchRule":
        return cls('custom', callback)


class _Frame(object):
    __slots__ = ['children', 'index', 'trail_len', 'bound', 'row_stamp']

    def __init__(self, children: Children, trail_len: int, bound: int, row_stamp: int) -> None:
        self.children = children
        self.index = 0
        self.trail_len = trail_len
        self.bound = bound
        self.row_stamp = row_stamp


class PBSolver(object):
    """
    深度优先分支定界 线性约束上做界传播 整数叶节点调用惰性分离器

    Args:
        model (PBModel): 模型
        rule (BranchRule, optional): 分支规则. Defaults to model.branch_rule 或默认规则.
        limits (Limits, optional): 上限. Defaults to 无上限.
    """

    __slots__ = [
        'model',
        'rule',
        'limits',
        'stats',
        '_values',
        '_trail',
        '_row_vars',
        '_row_coefs',
        '_row_rhs',
        '_row_minact',
        '_row_maxabs',
        '_occ',
        '_order',
        '_phase',
        '_lazy',
        '_incumbent',
        '_incumbent_value',
        '_start',
        '_frames',
    ]

    def __init__(self, model: PBModel, rule: Optional[BranchRule] = None, limits: Optional[Limits] = None) -> None:
        self.model: PBModel = model
        self.rule: BranchRule = rule or model.branch_rule or BranchRule.default()
        self.limits: Limits = limits or Limits()
        self.stats: SolveStats = SolveStats()

        num_vars = model.num_vars
        self._values: List[int] = [-1] * num_vars
        self._trail: List[int] = []
        self._row_vars: List[List[int]] = []
        self._row_coefs: List[List[int]] = []
        self._row_rhs: List[int] = []
        self._row_minact: List[int] = []
        self._row_maxabs: List[int] = []
        self._occ: List[List[Tuple[int, int]]] = [[] for _ in range(num_vars)]
        self._lazy: List[Constraint] = []
        self._incumbent: Optional[List[int]] = None
        self._incumbent_value: Optional[int] = None
        self._frames: List[_Frame] = []
        self._start: float = 0.0

        # 默认分支顺序: 目标系数降序 再按id
        self._order: List[int] = sorted(range(num_vars), key=lambda var: (-model.objective.get(var, 0), var))
        self._phase: List[int] = [1 if model.objective.get(var, 0) > 0 else 0 for var in range(num_vars)]

        # 0号行为目标下界 sum(-c x) <= -(incumbent+1)
        self._add_row(tuple((-coef, var) for var, coef in sorted(model.objective.items())), self._no_incumbent_rhs())
        for constraint in model.constraints:
            for terms, rhs in constraint.rows():
                self._add_row(terms, rhs)

    # ---------------------------------------------------------------- rows

    def _no_incumbent_rhs(self) -> int:
        return sum(abs(coef) for coef in self.model.objective.values()) + 1

    def _add_row(self, terms: Sequence[Tuple[int, int]], rhs: int) -> int:
        row = len(self._row_rhs)
        minact = self._min_activity(terms)
        for coef, var in terms:
            self._occ[var].append((row, coef))
        self._row_vars.append([var for _, var in terms])
        self._row_coefs.append([coef for coef, _ in terms])
        self._row_rhs.append(rhs)
        self._row_minact.append(minact)
        self._row_maxabs.append(max((abs(coef) for coef, _ in terms), default=0))
        return row

    def _assign(self, var: int, val: int, queue: List[int]) -> None:
        self._values[var] = val
        self._trail.append(var)
        minact = self._row_minact
        for row, coef in self._occ[var]:
            delta = coef * val - (coef if coef < 0 else 0)
            if delta:
                minact[row] += delta
                queue.append(row)

    def _undo(self, trail_len: int) -> None:
        values = self._values
        minact = self._row_minact
        trail = self._trail
        while len(trail) > trail_len:
            var = trail.pop()
            val = values[var]
            for row, coef in self._occ[var]:
                delta = coef * val - (coef if coef < 0 else 0)
                if delta:
                    minact[row] -= delta
            values[var] = -1

    def _propagate(self, queue: List[int]) -> bool:
        """
        Returns:
            bool: 无冲突时为True
        """

        values = self._values
        minact = self._row_minact
        rhs = self._row_rhs
        while queue:
            row = queue.pop()
            slack = rhs[row] - minact[row]
            if slack < 0:
                queue.clear()
                return False
            if slack >= self._row_maxabs[row]:
                continue
            for coef, var in zip(self._row_coefs[row], self._row_vars[row]):
                if values[var] < 0 and abs(coef) > slack:
                    self._assign(var, 0 if coef > 0 else 1, queue)
        return True

    def _fix_all(self, fixings: Iterable[Tuple[int, int]], queue: List[int]) -> bool:
        for var, val in fixings:
            cur = self._values[var]
            if cur < 0:
                self._assign(var, val, queue)
            elif cur != val:
                queue.clear()
                return False
        return True

    # ---------------------------------------------------------------- search

    def _bound(self) -> int:
        return -self._row_minact[0]

    def _default_children(self) -> Optional[Children]:
        values = self._values
        for var in self._order:
            if values[var] < 0:
                first = self._phase[var]
                return [[(var, first)], [(var, 1 - first)]]
        return None

    def _children(self) -> Optional[Children]:
        if self.rule.callback is not None:
            try:
                children = self.rule.callback(NodeState(self._values, len(self._frames)))
                if children:
                    return children
            except NoFreeEdge:
                pass
        return self._default_children()

    def _limit_status(self) -> Optional[SolveStatus]:
        limits = self.limits
        if limits.nodes is not None and self.stats.bnb_nodes >= limits.nodes:
            return SolveStatus.NODE_LIMIT
        if self.stats.bnb_nodes & 15 == 0:
            if limits.time is not None and time.perf_counter() - self._start >= limits.time:
                return SolveStatus.TIME_LIMIT
            if limits.memory is not None and resource is not None and self.stats.bnb_nodes & 1023 == 0:
                peak_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
                if peak_mb >= limits.memory:
                    return SolveStatus.MEMORY_LIMIT
        return None

    def _set_incumbent(self, assignment: List[int], value: int) -> None:
        self._incumbent = list(assignment)
        self._incumbent_value = value
        self._row_rhs[0] = -(value + 1)
        for var, val in enumerate(assignment):
            if not self.model.objective.get(var, 0):
                self._phase[var] = val

    def _separate(self, assignment: List[int]) -> List[Constraint]:
        separator = self.model.lazy_separator
        if separator is None:
            return []

        self.stats.separator_calls += 1
        constraints = separator(assignment)
        for constraint in constraints:
            if constraint.is_satisfied(assignment):
                raise SeparatorContractViolation(f"separator returned a satisfied constraint {constraint}")
        return constraints

    def _min_activity(self, terms: Sequence[Tuple[int, int]]) -> int:
        values = self._values
        minact = 0
        for coef, var in terms:
            val = values[var]
            if val < 0:
                if coef < 0:
                    minact += coef
            else:
                minact += coef * val
        return minact

    def _node_bound(self) -> Optional[int]:
        """
        Returns:
            int | None: 目标上界 None表示当前节点没有可行补全
        """

        bound = self._bound()
        if self.model.node_bound is not None:
            extra = self.model.node_bound(NodeState(self._values, len(self._frames)))
            if extra is None:
                return None
            bound = min(bound, extra)
        return bound

    def _pruned_by_bound(self) -> bool:
        if self.model.node_bound is None:
            return False
        bound = self._node_bound()
        return bound is None or (self._incumbent_value is not None and bound <= self._incumbent_value)

    def _separate_node(self) -> List[Constraint]:
        separator = self.model.node_separator
        if separator is None:
            return []

        constraints = separator(NodeState(self._values, len(self._frames)))
        if not constraints:
            return []

        self.stats.separator_calls += 1
        for constraint in constraints:
            if all(self._min_activity(terms) <= rhs for terms, rhs in constraint.rows()):
                raise SeparatorContractViolation(
                    f"node separator returned a constraint that keeps the node {constraint}"
                )
        return constraints

    def _add_lazy(self, constraints: List[Constraint]) -> None:
        for constraint in constraints:
            for terms, rhs in constraint.rows():
                self._add_row(terms, rhs)
            self._lazy.append(constraint)
        self.stats.lazy_constraints_added += len(constraints)
        LOG.debug(
            f"{self.model.name}: round {self.stats.separator_calls} added {len(constraints)} lazy constraints "
            f"(total {self.stats.lazy_constraints_added})"
        )

    def _try_warm_start(self) -> None:
        warm = self.model.warm_start
        if warm is None:
            return
        try:
            if not self.model.is_feasible(warm):
                raise InfeasibleWarmStart("explicit constraints violated")
            constraints = self._separate(list(warm))
            if constraints:
                self._add_lazy(constraints)
                raise InfeasibleWarmStart(f"{len(constraints)} lazy constraints violated")
        except InfeasibleWarmStart as err:
            LOG.info(f"Failed to use warm start of {self.model.name}. reason:{err}")
            return

        value = self.model.objective_value(warm)
        self._set_incumbent(list(warm), value)
        LOG.debug(f"{self.model.name}: warm start accepted with objective {value}")

    def _backtrack(self) -> bool:
        """
        回溯到下一个未探索的子节点并完成传播

        Returns:
            bool: 搜索树已穷尽时为False
        """

        frames = self._frames
        queue: List[int] = []
        while frames:
            frame = frames[-1]
            self._undo(frame.trail_len)
            frame.index += 1
            if frame.index >= len(frame.children):
                frames.pop()
                continue

            queue.clear()
            queue.append(0)
            queue.extend(range(frame.row_stamp, len(self._row_rhs)))
            if self._fix_all(frame.children[frame.index], queue) and self._propagate(queue):
                return True

        return False

    def _open_bound(self) -> int:
        bound = self._bound()
        for frame in self._frames:
            if frame.index + 1 < len(frame.children):
                bound = max(bound, frame.bound)
        return bound

    def solve(
        self, fixings: Optional[Iterable[Tuple[int, int]]] = None, stop_at_first: bool = False
    ) -> SolveResult:
        """
        求解

        Args:
            fixings (Iterable[tuple[int, int]], optional): 根节点额外固定的(var, value). Defaults to None.
            stop_at_first (bool, optional): 找到第一个可行解即停止. Defaults to False.

        Returns:
            SolveResult
        """

        self._start = time.perf_counter()
        model = self.model
        stats = self.stats

        if not stop_at_first:
            self._try_warm_start()

        root_bound = self._bound()
        status = None

        queue = list(range(len(self._row_rhs)))
        feasible = self._fix_all(fixings or (), queue) and self._propagate(queue)
        if feasible:
            root_bound = self._node_bound()
            if root_bound is None:
                feasible = False
                root_bound = self._bound()
        searching = feasible

        while searching:
            limit_status = self._limit_status()
            if limit_status is not None:
                status = limit_status
                break

            stats.bnb_nodes += 1
            if self._pruned_by_bound():
                searching = self._backtrack()
                continue

            cuts = self._separate_node()
            if cuts:
                self._add_lazy(cuts)
                searching = self._backtrack()
                continue

            children = self._children()

            if children is None:
                assignment = list(self._values)
                constraints = self._separate(assignment)
                if constraints:
                    self._add_lazy(constraints)
                else:
                    violated = [row for row in range(1, len(self._row_rhs)) if self._row_minact[row] > self._row_rhs[row]]
                    if violated:
                        raise SeparatorContractViolation(f"leaf violates rows {violated[:5]}")
                    value = model.objective_value(assignment)
                    self._set_incumbent(assignment, value)
                    LOG.debug(f"{model.name}: incumbent {value} at node {stats.bnb_nodes}")
                    if stop_at_first:
                        break
                searching = self._backtrack()
                continue

            frame = _Frame(children, len(self._trail), self._bound(), len(self._row_rhs))
            self._frames.append(frame)
            queue = []
            if not (self._fix_all(children[0], queue) and self._propagate(queue)):
                searching = self._backtrack()

        stats.wall_time = time.perf_counter() - self._start

        if status is None:
            if self._incumbent is None:
                status = SolveStatus.INFEASIBLE
                dual_bound = None
            elif stop_at_first and self._frames:
                status = SolveStatus.NODE_LIMIT
                dual_bound = max(self._incumbent_value, min(root_bound, self._open_bound()))
            else:
                status = SolveStatus.OPTIMAL
                dual_bound = self._incumbent_value
        else:
            open_bound = min(root_bound, self._open_bound())
            if self._incumbent is None:
                dual_bound = open_bound
            else:
                dual_bound = max(self._incumbent_value, open_bound)

        if self._incumbent is not None:
            for constraint in self._lazy:
                if not constraint.is_satisfied(self._incumbent):
                    raise SeparatorContractViolation(f"incumbent violates lazy constraint {constraint}")

        result = SolveResult(status, self._incumbent, self._incumbent_value, dual_bound, stats, list(self._lazy))
        LOG.debug(f"{model.name}: {result}")
        return result


def solve(model: PBModel, rule: Optional[BranchRule] = None, limits: Optional[Limits] = None) -> SolveResult:
    """
    求解0-1模型

    Args:
        model (PBModel): 模型
        rule (BranchRule, optional): 分支规则. Defaults to model.branch_rule.
        limits (Limits, optional): 时间/内存/节点上限. Defaults to 无上限.

    Returns:
        SolveResult: 达到上限时status为对应的LIMIT状态 并携带当前最优解
    """

    return PBSolver(model, rule, limits).solve()


def extend_assignment(
    model: PBModel, partial: Mapping[int, int], node_limit: int = 20000, time_limit: Optional[float] = 10.0
) -> Optional[List[int]]:
    """
    在固定partial的前提下搜索模型的任一可行完整解 用于热启动

    Args:
        model (PBModel): 模型
        partial (Mapping[int, int]): var -> value
        node_limit (int, optional): 节点上限. Defaults to 20000.
        time_limit (float, optional): 秒. Defaults to 10.0.

    Returns:
        list[int] | None: 失败时为None
    """

    warm, model.warm_start = model.warm_start, None
    try:
        solver = PBSolver(model, limits=Limits(time=time_limit, nodes=node_limit))
        result = solver.solve(fixings=sorted(partial.items()), stop_at_first=True)
    finally:
        model.warm_start = warm

    return result.incumbent
