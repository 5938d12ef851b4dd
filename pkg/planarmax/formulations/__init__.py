# -*- coding:utf-8 -*-
"""
四种平面性0-1模型

kuratowski: 边变量 + 惰性Kuratowski约束
facialwalks: 旋转系统 + 面追踪
schnyder: 三个全序
leftright: Trémaux树 + 余树边红蓝着色
"""

__all__ = ['Formulation', 'FORMULATIONS', 'get_formulation']

from typing import Callable, Dict, List, Optional

from ..pbsolver import PBModel
from ..types import EdgeSelection, WeightedGraph
from . import facialwalks, kuratowski, leftright, schnyder


class Formulation(object):
    """
    模型的统一入口

    Fields:
        name (str): 模型名
        config_type (type): 配置类 提供from_config(table)
        config_key (str): CONFIG中的表名
        build (Callable): build(g, cfg) -> PBModel
        decode (Callable): decode(g, model, assignment) -> (EdgeSelection, certificate)
        extend_warm_start (Callable): extend_warm_start(g, model, sel) -> list[int] | None
    """

    __slots__ = ['name', 'config_type', 'config_key', 'build', 'decode', 'extend_warm_start']

    def __init__(
        self,
        name: str,
        config_type: type,
        config_key: str,
        build: Callable[..., PBModel],
        decode: Callable,
        extend_warm_start: Callable[[WeightedGraph, PBModel, EdgeSelection], Optional[List[int]]],
    ) -> None:
        self.name = name
        self.config_type = config_type
        self.config_key = config_key
        self.build = build
        self.decode = decode
        self.extend_warm_start = extend_warm_start

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} [{self.name}]"


FORMULATIONS: Dict[str, Formulation] = {
    'kuratowski': Formulation(
        'kuratowski',
        kuratowski.KuratowskiConfig,
        'Kuratowski',
        kuratowski.build_kuratowski_model,
        kuratowski.decode,
        kuratowski.extend_warm_start,
    ),
    'facialwalks': Formulation(
        'facialwalks',
        facialwalks.FacialWalkConfig,
        'FacialWalks',
        facialwalks.build_facialwalk_model,
        facialwalks.decode,
        facialwalks.extend_warm_start,
    ),
    'schnyder': Formulation(
        'schnyder',
        schnyder.SchnyderConfig,
        'Schnyder',
        schnyder.build_schnyder_model,
        schnyder.decode,
        schnyder.extend_warm_start,
    ),
    'leftright': Formulation(
        'leftright',
        leftright.LeftRightConfig,
        'LeftRight',
        leftright.build_leftright_model,
        leftright.decode,
        leftright.extend_warm_start,
    ),
}


def get_formulation(name: str) -> Formulation:
    """
    Raises:
        ValueError: 未知的模型名
    """

    try:
        return FORMULATIONS[name]
    except KeyError:
        raise ValueError(f"unknown formulation {name}. expected one of {sorted(FORMULATIONS)}") from None
