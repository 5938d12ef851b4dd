# -*- coding:utf-8 -*-
__all__ = ['MPSResult', 'build_model', 'solve_mps']

import time
from typing import Any, List, Mapping, Optional

from .config import CONFIG
from .errors import NonPlanarCoreSolution
from .formulations import get_formulation
from .heuristics import best_of_restarts
from .logger import LOG
from .pbsolver import Limits, PBModel, SolveResult, SolveStatus, solve
from .planarity import test_planarity
from .preprocess import lift, reduce
from .types import EdgeSelection, WeightedGraph, selection_weight


class MPSResult(object):
    """
    一次完整求解的结果

    Fields:
        graph (WeightedGraph): 输入图
        formulation (str): 模型名
        status (SolveStatus): 所有核心都为OPTIMAL时为OPTIMAL
        selection (EdgeSelection): 输入图上的平面选择
        weight (int): selection的权重
        dual_bound (int): 输入图上的对偶界
        heuristic_weight (int): 启发式解在输入图上的权重
        core_results (list[SolveResult]): 每个非平面核心的求解结果
        wall_time (float): 秒
    """

    __slots__ = [
        'graph',
        'formulation',
        'status',
        'selection',
        'weight',
        'dual_bound',
        'heuristic_weight',
        'core_results',
        'wall_time',
    ]

    def __init__(
        self,
        graph: WeightedGraph,
        formulation: str,
        status: SolveStatus,
        selection: EdgeSelection,
        weight: int,
        dual_bound: int,
        heuristic_weight: int,
        core_results: List[SolveResult],
        wall_time: float,
    ) -> None:
        self.graph = graph
        self.formulation = formulation
        self.status = status
        self.selection = selection
        self.weight = weight
        self.dual_bound = dual_bound
        self.heuristic_weight = heuristic_weight
        self.core_results = core_results
        self.wall_time = wall_time

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [{self.graph.name or self.graph} / {self.formulation} / "
            f"{self.status.value} / weight:{self.weight} / dual:{self.dual_bound}]"
        )

    @property
    def skewness(self) -> int:
        """
        被删除的权重
        """

        return self.graph.total_weight - self.weight

    @property
    def bnb_nodes(self) -> int:
        return sum(res.stats.bnb_nodes for res in self.core_results)

    @property
    def lazy_constraints(self) -> int:
        return sum(res.stats.lazy_constraints_added for res in self.core_results)


def build_model(formulation: str, g: WeightedGraph, settings: Optional[Mapping[str, Any]] = None) -> PBModel:
    """
    按名字构造模型

    Args:
        formulation (str): kuratowski / facialwalks / schnyder / leftright
        g (WeightedGraph): 实例
        settings (Mapping[str, Any], optional): 与CONFIG同构的配置表. Defaults to CONFIG.

    Returns:
        PBModel

    Raises:
        ValueError: 未知的模型名
    """

    if settings is None:
        settings = CONFIG
    form = get_formulation(formulation)
    cfg = form.config_type.from_config(settings.get(form.config_key, {}))
    return form.build(g, cfg)


def _worse(current: SolveStatus, other: SolveStatus) -> SolveStatus:
    if current is SolveStatus.OPTIMAL:
        return other
    return current


def solve_mps(
    g: WeightedGraph,
    formulation: str = 'kuratowski',
    settings: Optional[Mapping[str, Any]] = None,
    limits: Optional[Limits] = None,
) -> MPSResult:
    """
    归约 -> 每个核心: 启发式 模型 热启动 求解 解码 -> 提升回原图

    Args:
        g (WeightedGraph): 实例
        formulation (str, optional): 模型名. Defaults to 'kuratowski'.
        settings (Mapping[str, Any], optional): 配置表. Defaults to CONFIG.
        limits (Limits, optional): 所有核心共享的上限. Defaults to Limits.from_config(settings['Solver']).

    Returns:
        MPSResult: 达到上限时status为对应状态 不抛出LimitExceeded

    Raises:
        NonPlanarCoreSolution: 提升后的选择不是平面的
    """

    if settings is None:
        settings = CONFIG
    if limits is None:
        limits = Limits.from_config(settings.get('Solver', {}))

    start = time.perf_counter()
    form = get_formulation(formulation)
    heuristic_table = settings.get('Heuristic', {})

    reduction = reduce(g)
    status = SolveStatus.OPTIMAL
    dual_bound = reduction.secured_weight
    heuristic_weight = reduction.secured_weight
    core_sels = []
    core_results = []

    for npc_core in reduction.cores:
        core = npc_core.graph
        heuristic = best_of_restarts(core, heuristic_table.get('restarts', 0), heuristic_table.get('seed', 0))
        heuristic_value = selection_weight(core, heuristic)
        heuristic_weight += heuristic_value

        model = build_model(formulation, core, settings)
        try:
            model.warm_start = form.extend_warm_start(core, model, heuristic)
        except Exception as err:
            LOG.warning(f"Failed to extend warm start of {core.name or core}. reason:{err}")
            model.warm_start = None

        result = solve(model, limits=limits.remaining(time.perf_counter() - start))
        core_results.append(result)
        status = _worse(status, result.status)

        if result.incumbent is not None and result.objective_value >= heuristic_value:
            sel, _ = form.decode(core, model, result.incumbent)
        else:
            sel = heuristic
        core_sels.append(sel)

        core_dual = result.dual_bound if result.dual_bound is not None else core.total_weight
        dual_bound += max(core_dual, selection_weight(core, sel))

    selection = lift(reduction, core_sels)
    if not test_planarity(g, selection):
        raise NonPlanarCoreSolution(f"lifted selection of {g.name or g} is not planar")

    weight = selection_weight(g, selection)
    wall_time = time.perf_counter() - start
    mps_result = MPSResult(
        g, formulation, status, selection, weight, max(dual_bound, weight), heuristic_weight, core_results, wall_time
    )
    LOG.info(f"Solved {mps_result} in {wall_time:.3f}s")
    return mps_result
