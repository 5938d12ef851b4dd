# -*- coding:utf-8 -*-
__all__ = [
    'RunRecord',
    'FORMATS',
    'detect_format',
    'parse_edgelist',
    'parse_dimacs',
    'parse_gml',
    'ingest',
    'gen_random_regular',
    'write_dimacs',
    'load_bench_config',
    'run_instance',
    'run_suite',
    'records_to_csv',
    'summarize',
]

import asyncio
import copy
import csv
import io
import re
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import tomli

from .config import CONFIG
from .errors import FormatMismatch, GraphError, InfeasibleDegree, ParseError
from .formulations import FORMULATIONS
from .logger import LOG
from .mps import solve_mps
from .oracle import oracle_mps_weight
from .pbsolver import Limits, SolveStatus
from .types import WeightedGraph, build_graph

FORMATS = ('edgelist', 'gml', 'dimacs')

_SUFFIX_FORMAT = {
    '.txt': 'edgelist',
    '.edges': 'edgelist',
    '.edgelist': 'edgelist',
    '.el': 'edgelist',
    '.gml': 'gml',
    '.dimacs': 'dimacs',
    '.col': 'dimacs',
    '.clq': 'dimacs',
}

# 扁平配置文件中可识别的键 -> 所属的表
_FLAT_KEYS = {
    'time_limit': 'Solver',
    'memory_limit': 'Solver',
    'node_limit': 'Solver',
    'max_constraints_per_round': 'Kuratowski',
    'max_extractions_per_round': 'Kuratowski',
    'keep_most_violated': 'Kuratowski',
    'force_first_three_faces': 'FacialWalks',
    'symmetry_faces_descending': 'FacialWalks',
    'degree3_specialization': 'FacialWalks',
    'profile': 'FacialWalks',
    'intersection_constraints': 'Schnyder',
    'symmetry_breaking': 'Schnyder',
    'transitivity': 'Schnyder',
    'symmetry_blue': 'LeftRight',
    'unique_tree': 'LeftRight',
    'dfs_branching': 'LeftRight',
    'dfs_branching_max_depth': 'LeftRight',
    'max_coloring_constraints_per_round': 'LeftRight',
    'restarts': 'Heuristic',
}


class RunRecord(object):
    """
    一次(实例, 模型)运行的记录

    Fields:
        instance_name (str): 实例名
        formulation (str): 模型名
        status (str): SolveStatus的值 或'Error'
        objective (int | None): 平面子图权重
        dual_bound (int | None): 对偶界
        skewness_upper_bound (int | None): 启发式给出的偏斜度上界
        oracle (int | None): 穷举得到的最优值 未运行时为None
        wall_time_ms (int | None): 毫秒
        bnb_nodes (int): 分支定界节点数
        lazy_constraints (int): 惰性约束数
        seed (int): 启发式随机种子
    """

    __slots__ = [
        'instance_name',
        'formulation',
        'status',
        'objective',
        'dual_bound',
        'skewness_upper_bound',
        'oracle',
        'wall_time_ms',
        'bnb_nodes',
        'lazy_constraints',
        'seed',
    ]

    FIELDS = tuple(__slots__)

    def __init__(
        self,
        instance_name: str,
        formulation: str,
        status: str,
        objective: Optional[int] = None,
        dual_bound: Optional[int] = None,
        skewness_upper_bound: Optional[int] = None,
        oracle: Optional[int] = None,
        wall_time_ms: Optional[int] = None,
        bnb_nodes: int = 0,
        lazy_constraints: int = 0,
        seed: int = 0,
    ) -> None:
        self.instance_name = instance_name
        self.formulation = formulation
        self.status = status
        self.objective = objective
        self.dual_bound = dual_bound
        self.skewness_upper_bound = skewness_upper_bound
        self.oracle = oracle
        self.wall_time_ms = wall_time_ms
        self.bnb_nodes = bnb_nodes
        self.lazy_constraints = lazy_constraints
        self.seed = seed

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__} [{self.instance_name} / {self.formulation} / {self.status} / "
            f"objective:{self.objective} / dual:{self.dual_bound}]"
        )

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL.value

    def as_row(self) -> List[str]:
        return ['' if getattr(self, key) is None else str(getattr(self, key)) for key in self.FIELDS]


def detect_format(path: Union[str, Path]) -> str:
    """
    由后缀推断格式 未知后缀按edgelist处理
    """

    return _SUFFIX_FORMAT.get(Path(path).suffix.lower(), 'edgelist')


def _sniff(text: str) -> Optional[str]:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped[0] in '#%':
            continue
        if stripped[0] == 'c' and (len(stripped) == 1 or stripped[1].isspace()):
            continue
        if stripped.startswith('p ') or stripped.startswith('e '):
            return 'dimacs'
        if re.match(r'(graph|Creator|Version)\b', stripped):
            return 'gml'
        return None
    return None


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None


def _build(n: int, triples: Sequence[Tuple[int, int, int]], lines: Sequence[int], name: str) -> WeightedGraph:
    seen = {}
    for (u, v, w), lineno in zip(triples, lines):
        if u == v:
            raise ParseError(f"self-loop at node {u}", lineno)
        if w < 1:
            raise ParseError(f"non-positive weight {w}", lineno)
        edge = (u, v) if u < v else (v, u)
        if edge in seen:
            raise ParseError(f"edge {edge} repeats line {seen[edge]}", lineno)
        seen[edge] = lineno
    return build_graph(n, triples, name=name)


def parse_edgelist(text: str, name: str = '') -> WeightedGraph:
    """
    每行"u v [w]" 节点从0开始 '#'或'%'开头为注释 首个非注释行可以是非数字表头

    Raises:
        ParseError
    """

    triples = []
    lines = []
    header_allowed = True
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0][0] in '#%':
            continue
        if header_allowed and not tokens[0].lstrip('-').isdigit():
            header_allowed = False
            continue
        header_allowed = False

        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'u v [w]', got {len(tokens)} fields", lineno)
        u = _parse_int(tokens[0], lineno, 'node')
        v = _parse_int(tokens[1], lineno, 'node')
        w = _parse_int(tokens[2], lineno, 'weight') if len(tokens) == 3 else 1
        if u < 0 or v < 0:
            raise ParseError(f"negative node id in ({u},{v})", lineno)
        triples.append((u, v, w))
        lines.append(lineno)

    if not triples:
        raise ParseError("no edges found")
    n = max(max(u, v) for u, v, _ in triples) + 1
    return _build(n, triples, lines, name)


def parse_dimacs(text: str, name: str = '') -> WeightedGraph:
    """
    "p edge n m"后接m行"e u v [w]" 节点从1开始 'c'开头为注释

    Raises:
        ParseError
    """

    n = m = None
    triples = []
    lines = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0] == 'c':
            continue

        if tokens[0] == 'p':
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(tokens) != 4:
                raise ParseError("expected 'p edge n m'", lineno)
            n = _parse_int(tokens[2], lineno, 'node count')
            m = _parse_int(tokens[3], lineno, 'edge count')
            if n < 1 or m < 0:
                raise ParseError(f"invalid size n={n} m={m}", lineno)

        elif tokens[0] == 'e':
            if n is None:
                raise ParseError("edge line before the problem line", lineno)
            if len(tokens) not in (3, 4):
                raise ParseError("expected 'e u v [w]'", lineno)
            u = _parse_int(tokens[1], lineno, 'node')
            v = _parse_int(tokens[2], lineno, 'node')
            w = _parse_int(tokens[3], lineno, 'weight') if len(tokens) == 4 else 1
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge ({u},{v}) leaves [1,{n}]", lineno)
            triples.append((u - 1, v - 1, w))
            lines.append(lineno)

        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", lineno)

    if n is None:
        raise ParseError("missing problem line")
    if len(triples) != m:
        raise ParseError(f"problem line announces {m} edges, found {len(triples)}")
    return _build(n, triples, lines, name)


def parse_gml(text: str, name: str = '') -> WeightedGraph:
    """
    GML 节点id按排序后重新编号为0..n-1 边权取'weight'属性 缺省为1

    Raises:
        ParseError
    """

    try:
        nx_graph = nx.parse_gml(text.splitlines(), label=None)
    except (nx.NetworkXError, ValueError, KeyError) as err:
        lineno = 0
        found = re.search(r'line (\d+)', str(err))
        if found:
            lineno = int(found.group(1))
        raise ParseError(f"malformed GML. reason:{err}", lineno) from None

    if nx_graph.is_directed() or nx_graph.is_multigraph():
        raise ParseError("GML graph must be undirected and simple")
    if nx_graph.number_of_nodes() == 0:
        raise ParseError("GML graph has no nodes")

    try:
        return WeightedGraph.from_networkx(nx_graph, name=name)
    except (GraphError, ValueError, TypeError) as err:
        raise ParseError(f"invalid GML graph. reason:{err}") from None


_PARSERS = {'edgelist': parse_edgelist, 'dimacs': parse_dimacs, 'gml': parse_gml}


def ingest(path: Union[str, Path], format: Optional[str] = None) -> WeightedGraph:
    """
    读取实例文件

    Args:
        path (str | Path): 文件路径
        format (str, optional): edgelist / gml / dimacs. Defaults to 由后缀推断.

    Returns:
        WeightedGraph: 以文件名(不含后缀)为name

    Raises:
        ParseError: 内容无法解析 line为出错行号
        FormatMismatch: 指定格式与文件内容不符
    """

    path = Path(path)
    if format is None:
        format = detect_format(path)
    if format not in FORMATS:
        raise FormatMismatch(f"unknown format {format}. expected one of {FORMATS}")

    text = path.read_text(encoding='utf-8')
    sniffed = _sniff(text)
    if sniffed is not None and sniffed != format:
        raise FormatMismatch(f"{path.name} looks like {sniffed}, not {format}")

    return _PARSERS[format](text, name=path.stem)


def gen_random_regular(n: int, d: int, seed: int = 0, max_tries: int = 10000) -> WeightedGraph:
    """
    配对模型生成随机d-正则简单图 出现自环或重边时整体重新采样

    Args:
        n (int): 节点数
        d (int): 度
        seed (int, optional): 随机种子. Defaults to 0.
        max_tries (int, optional): 最大重采样次数. Defaults to 10000.

    Returns:
        WeightedGraph: 单位权 name为rr_n{n}_d{d}_s{seed}

    Raises:
        InfeasibleDegree: n*d为奇数 或d>=n 或d<0 或重采样次数耗尽
    """

    if d < 0 or n < 1 or d >= n or (n * d) % 2:
        raise InfeasibleDegree(f"no simple {d}-regular graph on {n} nodes")

    name = f"rr_n{n}_d{d}_s{seed}"
    if d == 0:
        return build_graph(n, [], name=name)

    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        pairs = rng.permutation(points).reshape(-1, 2)
        edges = set()
        for u, v in pairs.tolist():
            edge = (u, v) if u < v else (v, u)
            if u == v or edge in edges:
                break
            edges.add(edge)
        else:
            return build_graph(n, sorted(edges), name=name)

    raise InfeasibleDegree(f"pairing model failed {max_tries} times for n={n} d={d}")


def write_dimacs(g: WeightedGraph, path: Union[str, Path, None] = None) -> str:
    """
    写出DIMACS文本 存在非单位权时每条边带权

    Args:
        g (WeightedGraph): 实例
        path (str | Path, optional): 输出文件. Defaults to None(只返回文本).

    Returns:
        str: 文本
    """

    weighted = any(w != 1 for w in g.weights)
    lines = []
    if g.name:
        lines.append(f"c {g.name}")
    lines.append(f"p edge {g.n} {g.m}")
    for (u, v), w in zip(g.edges, g.weights):
        lines.append(f"e {u + 1} {v + 1} {w}" if weighted else f"e {u + 1} {v + 1}")
    text = '\n'.join(lines) + '\n'

    if path is not None:
        Path(path).write_text(text, encoding='utf-8', newline='\n')
    return text


def load_bench_config(config_file: Union[str, Path, None] = None) -> Dict[str, Any]:
    """
    以CONFIG为底 合并bench配置文件
    文件中的表覆盖同名表的键 顶层的扁平键按_FLAT_KEYS归入对应表 其余归入Bench

    Returns:
        dict[str, Any]: 与CONFIG同构
    """

    settings = copy.deepcopy(CONFIG)
    if config_file is None:
        return settings

    with Path(config_file).open("rb") as file:
        loaded = tomli.load(file)

    for key, value in loaded.items():
        if isinstance(value, dict):
            settings.setdefault(key, {}).update(value)
        else:
            settings.setdefault(_FLAT_KEYS.get(key, 'Bench'), {})[key] = value

    return settings


def _enabled_formulations(settings: Dict[str, Any]) -> List[str]:
    names = settings['Bench'].get('formulations', list(FORMULATIONS))
    unknown = [name for name in names if name not in FORMULATIONS]
    if unknown:
        raise ValueError(f"unknown formulations {unknown}")
    return list(names)


def run_instance(path: Union[str, Path], settings: Dict[str, Any]) -> List[RunRecord]:
    """
    对一个实例运行所有启用的模型 失败记录为'Error'而不抛出

    Returns:
        list[RunRecord]: 按模型顺序
    """

    path = Path(path)
    bench = settings['Bench']
    formulations = _enabled_formulations(settings)
    seed = settings['Heuristic'].get('seed', 0)
    record_time = bench.get('record_wall_time', True)

    try:
        g = ingest(path, bench.get('format'))
    except Exception as err:
        LOG.warning(f"Failed to ingest {path}. reason:{err}")
        return [RunRecord(path.stem, name, 'Error', seed=seed) for name in formulations]

    oracle = None
    if g.m <= bench.get('oracle_max_edges', 20):
        try:
            oracle = oracle_mps_weight(g, max_edges=bench.get('oracle_max_edges', 20))
        except Exception as err:
            LOG.warning(f"Failed to run oracle on {g.name}. reason:{err}")

    limits = Limits.from_config(settings['Solver'])
    records = []
    for name in formulations:
        try:
            res = solve_mps(g, name, settings, limits)
        except Exception as err:
            LOG.warning(f"Failed to solve {g.name} with {name}. reason:{err}")
            records.append(RunRecord(g.name, name, 'Error', oracle=oracle, seed=seed))
            continue

        if oracle is not None and res.status is SolveStatus.OPTIMAL and res.weight != oracle:
            LOG.warning(f"Failed to match oracle on {g.name} with {name}. reason:{res.weight}!={oracle}")

        records.append(
            RunRecord(
                g.name,
                name,
                res.status.value,
                res.weight,
                res.dual_bound,
                g.total_weight - res.heuristic_weight,
                oracle,
                int(round(res.wall_time * 1000)) if record_time else None,
                res.bnb_nodes,
                res.lazy_constraints,
                seed,
            )
        )

    return records


def records_to_csv(records: Sequence[RunRecord]) -> str:
    buffer = io.StringIO(newline='')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(RunRecord.FIELDS)
    for record in records:
        writer.writerow(record.as_row())
    return buffer.getvalue()


def _corpus(corpus_dir: Union[str, Path]) -> List[Path]:
    return sorted(
        (path for path in Path(corpus_dir).iterdir() if path.is_file() and path.suffix.lower() in _SUFFIX_FORMAT),
        key=lambda path: path.name,
    )


async def _run_all(paths: Sequence[Path], settings: Dict[str, Any], jobs: int) -> List[List[RunRecord]]:
    if jobs <= 1:
        return [run_instance(path, settings) for path in paths]

    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(jobs)

    with ProcessPoolExecutor(max_workers=jobs) as executor:

        async def _run(path: Path) -> List[RunRecord]:
            async with semaphore:
                return await loop.run_in_executor(executor, run_instance, path, settings)

        return await asyncio.gather(*[_run(path) for path in paths])


def run_suite(
    corpus_dir: Union[str, Path],
    config_file: Union[str, Path, None] = None,
    output: Union[str, Path, None] = None,
    jobs: Optional[int] = None,
) -> str:
    """
    对语料目录中的每个实例运行每个启用的模型

    Args:
        corpus_dir (str | Path): 实例目录 按文件名排序
        config_file (str | Path, optional): bench配置. Defaults to None(使用CONFIG).
        output (str | Path, optional): CSV输出路径. Defaults to Bench.output 或不写文件.
        jobs (int, optional): 并行实例数. Defaults to Bench.jobs 或1.

    Returns:
        str: CSV文本 表头 + 每条记录一行 LF换行
    """

    settings = load_bench_config(config_file)
    bench = settings['Bench']
    if jobs is None:
        jobs = bench.get('jobs', 1)
    if output is None:
        output = bench.get('output')

    paths = _corpus(corpus_dir)
    LOG.info(f"Running {len(paths)} instances with {_enabled_formulations(settings)} on {jobs} jobs")

    grouped = asyncio.run(_run_all(paths, settings, jobs))
    records = [record for group in grouped for record in group]
    text = records_to_csv(records)

    if output is not None:
        Path(output).write_text(text, encoding='utf-8', newline='\n')
    summarize(records)
    return text


def summarize(records: Sequence[RunRecord]) -> List[Tuple[str, int, int, float]]:
    """
    每个模型的求解比例

    Returns:
        list[tuple[str, int, int, float]]: (模型, 最优数, 总数, 比例) 按模型名排序
    """

    counts: Dict[str, List[int]] = {}
    for record in records:
        solved_total = counts.setdefault(record.formulation, [0, 0])
        solved_total[0] += record.is_optimal
        solved_total[1] += 1

    rows = []
    for name in sorted(counts):
        solved, total = counts[name]
        rows.append((name, solved, total, solved / total if total else 0.0))
        LOG.info(f"{name:<12} solved {solved}/{total} ({solved / total:.2%})")

    return rows
