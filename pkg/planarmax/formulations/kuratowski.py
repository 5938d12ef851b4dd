# -*- coding:utf-8 -*-
__all__ = [
    'KuratowskiConfig',
    'build_kuratowski_model',
    'separate_kuratowski',
    'separate_fractional',
    'decode',
    'extend_warm_start',
]

import functools
from typing import List, Mapping, Optional, Sequence, Tuple

from ..config import CONFIG
from ..errors import NotNonPlanar
from ..pbsolver import Constraint, PBModel
from ..planarity import extract_kuratowskis, is_planar, round_selection
from ..types import EdgeSelection, WeightedGraph
from .base import add_edge_vars, add_euler_row, install_weight_bound, kuratowski_constraint, selection_of


class KuratowskiConfig(object):
    """
    Kuratowski模型的分离参数

    Args:
        max_constraints_per_round (int, optional): 每轮返回的约束数. Defaults to 50.
        max_extractions_per_round (int, optional): 每轮抽取的细分数. Defaults to 250.
        keep_most_violated (bool, optional): 按(边数, 边id)挑选 否则按发现顺序. Defaults to True.
        rounding_thresholds (tuple[float, float], optional): 外部LP分数分离的取整阈值. Defaults to (0.99, 0.9).
    """

    __slots__ = ['max_constraints_per_round', 'max_extractions_per_round', 'keep_most_violated', 'rounding_thresholds']

    def __init__(
        self,
        max_constraints_per_round: int = 50,
        max_extractions_per_round: int = 250,
        keep_most_violated: bool = True,
        rounding_thresholds: Tuple[float, float] = (0.99, 0.9),
    ) -> None:
        if not 1 <= max_constraints_per_round <= max_extractions_per_round:
            raise ValueError(
                f"need 1<=max_constraints_per_round<=max_extractions_per_round, "
                f"got {max_constraints_per_round} and {max_extractions_per_round}"
            )
        self.max_constraints_per_round: int = max_constraints_per_round
        self.max_extractions_per_round: int = max_extractions_per_round
        self.keep_most_violated: bool = keep_most_violated
        self.rounding_thresholds: Tuple[float, float] = tuple(rounding_thresholds)

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [constraints:{self.max_constraints_per_round} / "
            f"extractions:{self.max_extractions_per_round}]"
        )

    @classmethod
    def from_config(cls, table: Optional[Mapping] = None) -> "KuratowskiConfig":
        if table is None:
            table = CONFIG['Kuratowski']
        return cls(
            max_constraints_per_round=table.get('max_constraints_per_round', 50),
            max_extractions_per_round=table.get('max_extractions_per_round', 250),
            keep_most_violated=table.get('keep_most_violated', True),
            rounding_thresholds=tuple(table.get('rounding_thresholds', (0.99, 0.9))),
        )


def separate_kuratowski(g: WeightedGraph, assignment: Sequence[int], cfg: Optional[KuratowskiConfig] = None) -> List[Constraint]:
    """
    整数解上的Kuratowski约束分离

    Args:
        g (WeightedGraph): 实例
        assignment (Sequence[int]): 模型变量取值 前m个为s_e
        cfg (KuratowskiConfig, optional): 分离参数. Defaults to KuratowskiConfig().

    Returns:
        list[Constraint]: 每个细分K一条 sum(s_e for e in K) <= |K|-1 选择平面时为空
    """

    if cfg is None:
        cfg = KuratowskiConfig()

    sel = selection_of(g, assignment)
    if is_planar(g, sel):
        return []

    subdivisions = extract_kuratowskis(g, sel, cfg.max_extractions_per_round)
    if cfg.keep_most_violated:
        # 整数点上违反量都是1 按支撑大小排序
        subdivisions = sorted(subdivisions, key=lambda k: (len(k), k.edges))
    return [kuratowski_constraint(k) for k in subdivisions[: cfg.max_constraints_per_round]]


def separate_fractional(
    g: WeightedGraph, values: Sequence[float], cfg: Optional[KuratowskiConfig] = None
) -> List[Constraint]:
    """
    分数点上的启发式分离 供外接LP求解器使用
    先按第一个阈值取整 得到平面选择时再按第二个阈值取整

    Args:
        g (WeightedGraph): 实例
        values (Sequence[float]): 每条边的s_e分数值
        cfg (KuratowskiConfig, optional): 分离参数. Defaults to KuratowskiConfig().

    Returns:
        list[Constraint]: 在values上违反的约束
    """

    if cfg is None:
        cfg = KuratowskiConfig()

    for threshold in cfg.rounding_thresholds:
        sel = round_selection(g, values, threshold)
        try:
            subdivisions = extract_kuratowskis(g, sel, cfg.max_extractions_per_round)
        except NotNonPlanar:
            continue

        constraints = []
        for k in subdivisions:
            lhs = sum(values[idx] for idx in k.edges)
            if lhs > len(k) - 1 + 1e-9:
                constraints.append((len(k) - 1 - lhs, k))
        constraints.sort(key=lambda item: (item[0], len(item[1]), item[1].edges))
        return [kuratowski_constraint(k) for _, k in constraints[: cfg.max_constraints_per_round]]

    return []


def build_kuratowski_model(g: WeightedGraph, cfg: Optional[KuratowskiConfig] = None) -> PBModel:
    """
    Kuratowski模型: s_e变量 欧拉约束 以及惰性分离的细分约束

    Args:
        g (WeightedGraph): 实例
        cfg (KuratowskiConfig, optional): 分离参数. Defaults to KuratowskiConfig.from_config().

    Returns:
        PBModel
    """

    if cfg is None:
        cfg = KuratowskiConfig.from_config()

    model = PBModel(f"kuratowski:{g.name or 'g'}")
    add_edge_vars(model, g)
    add_euler_row(model, g)
    install_weight_bound(model, g)

    model.lazy_separator = functools.partial(separate_kuratowski, g, cfg=cfg)
    model.comments.append("Kuratowski constraints are separated lazily; only those found so far are listed")
    model.meta['formulation'] = 'kuratowski'
    return model


def decode(g: WeightedGraph, model: PBModel, assignment: Sequence[int]) -> Tuple[EdgeSelection, None]:
    return selection_of(g, assignment), None


def extend_warm_start(g: WeightedGraph, model: PBModel, sel: EdgeSelection) -> Optional[List[int]]:
    return list(sel.bits)
