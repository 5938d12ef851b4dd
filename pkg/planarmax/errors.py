# -*- coding:utf-8 -*-
__all__ = [
    'MPSError',
    'GraphError',
    'DuplicateEdge',
    'SelfLoop',
    'NonPositiveWeight',
    'NodeOutOfRange',
    'LengthMismatch',
    'TooFewNodes',
    'Disconnected',
    'PlanarityError',
    'NotNonPlanar',
    'InconsistentRotation',
    'NotPlanarInput',
    'NonPlanarCoreSolution',
    'UnclassifiedCounterexample',
    'SolverError',
    'LimitExceeded',
    'SeparatorContractViolation',
    'MalformedTree',
    'NoFreeEdge',
    'InfeasibleWarmStart',
    'IngestError',
    'ParseError',
    'FormatMismatch',
    'InfeasibleDegree',
    'InstanceTooLarge',
]


class MPSError(Exception):
    """
    planarmax异常基类
    """


class GraphError(MPSError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class NodeOutOfRange(GraphError):
    pass


class LengthMismatch(GraphError):
    pass


class TooFewNodes(GraphError):
    pass


class Disconnected(GraphError):
    pass


class PlanarityError(MPSError, ValueError):
    pass


class NotNonPlanar(PlanarityError):
    pass


class InconsistentRotation(PlanarityError):
    pass


class NotPlanarInput(PlanarityError):
    pass


class NonPlanarCoreSolution(PlanarityError):
    pass


class UnclassifiedCounterexample(PlanarityError):
    """
    平面性测试给出的反例不是K5或K3,3细分
    """


class SolverError(MPSError, RuntimeError):
    pass


class LimitExceeded(SolverError):
    """
    求解达到时间/内存/节点上限

    Args:
        result (SolveResult): 携带当前最优解的求解结果
    """

    def __init__(self, result) -> None:
        super().__init__(f"limit reached with status {result.status.name}")
        self.result = result


class SeparatorContractViolation(SolverError):
    pass


class MalformedTree(SolverError):
    pass


class NoFreeEdge(SolverError):
    pass


class InfeasibleWarmStart(SolverError):
    pass


class IngestError(MPSError, ValueError):
    pass


class ParseError(IngestError):
    """
    解析失败

    Args:
        message (str): 原因
        line (int): 出错行号 从1开始 未知时为0
    """

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class FormatMismatch(IngestError):
    pass


class InfeasibleDegree(GraphError):
    pass


class InstanceTooLarge(MPSError, ValueError):
    pass
