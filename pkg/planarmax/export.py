# -*- coding:utf-8 -*-
__all__ = ['export_opb', 'export_lp', 'parse_opb', 'parse_lp']

import re
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ParseError
from .pbsolver import EQ, GE, LE, Constraint, PBModel

_LP_LINE_WIDTH = 200
_LP_NAME = re.compile(r'[^A-Za-z0-9_]')
_OPB_TERM = re.compile(r'^([+-]?\d+)$')


def _opb_terms(terms: Sequence[Tuple[int, int]]) -> str:
    return ' '.join(f"{coef:+d} x{var + 1}" for coef, var in terms)


def export_opb(model: PBModel) -> str:
    """
    导出为伪布尔竞赛OPB格式 仅含显式约束

    变量按id依次编号为x1...xN 最大化目标取负写成min行
    <=约束两边取负改写为>=

    Args:
        model (PBModel): 模型

    Returns:
        str: LF换行的文本 相同模型逐字节一致
    """

    lines = [f"* #variable= {model.num_vars} #constraint= {len(model.constraints)}"]
    lines.extend(f"* {comment}" for comment in model.comments)

    objective = [(-coef, var) for var, coef in sorted(model.objective.items()) if coef]
    if objective:
        lines.append(f"min: {_opb_terms(objective)} ;")

    for constraint in model.constraints:
        terms, sense, rhs = constraint.terms, constraint.sense, constraint.rhs
        if sense == LE:
            terms, sense, rhs = tuple((-coef, var) for coef, var in terms), GE, -rhs
        body = _opb_terms(terms) if terms else "0 x1"
        lines.append(f"{body} {sense} {rhs} ;")

    return '\n'.join(lines) + '\n'


def parse_opb(text: str) -> PBModel:
    """
    解析OPB文本 变量名为x1...xN 约束均为>=或=形式

    Raises:
        ParseError
    """

    model = PBModel()
    num_vars = 0
    statements: List[Tuple[int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('*'):
            match = re.search(r'#variable=\s*(\d+)', line)
            if match:
                num_vars = int(match.group(1))
            elif lineno > 1:
                model.comments.append(line[1:].strip())
            continue
        if not line.endswith(';'):
            raise ParseError("statement not terminated by ';'", lineno)
        statements.append((lineno, line[:-1].strip()))

    for idx in range(num_vars):
        model.add_var(f"x{idx + 1}")

    def terms_of(tokens: List[str], lineno: int) -> Dict[int, int]:
        if len(tokens) % 2:
            raise ParseError("odd number of tokens in a term list", lineno)
        terms: Dict[int, int] = {}
        for pos in range(0, len(tokens), 2):
            coef, name = tokens[pos], tokens[pos + 1]
            if not _OPB_TERM.match(coef) or not name.startswith('x'):
                raise ParseError(f"malformed term {coef} {name}", lineno)
            var = int(name[1:]) - 1
            while var >= model.num_vars:
                model.add_var(f"x{model.num_vars + 1}")
            terms[var] = terms.get(var, 0) + int(coef)
        return terms

    for lineno, body in statements:
        if body.startswith('min:'):
            for var, coef in terms_of(body[4:].split(), lineno).items():
                if coef:
                    model.objective[var] = -coef
            continue

        for sense in (GE, EQ):
            if f" {sense} " in f" {body} ":
                lhs, rhs = body.rsplit(sense, 1)
                break
        else:
            raise ParseError("missing comparator", lineno)
        try:
            rhs_value = int(rhs)
        except ValueError:
            raise ParseError(f"malformed right-hand side {rhs.strip()}", lineno) from None
        model.constraints.append(Constraint(terms_of(lhs.split(), lineno), sense, rhs_value))

    return model


def _lp_name(name: str) -> str:
    return _LP_NAME.sub('_', name)


def _lp_expr(model: PBModel, terms: Sequence[Tuple[int, int]], prefix: str) -> List[str]:
    if not terms:
        terms = ((0, 0),)

    lines = []
    line = prefix
    for pos, (coef, var) in enumerate(terms):
        if pos == 0:
            token = f"{coef} {model.name_of(var)}" if coef >= 0 else f"- {-coef} {model.name_of(var)}"
        else:
            token = f"{'+' if coef >= 0 else '-'} {abs(coef)} {model.name_of(var)}"
        if len(line) + len(token) + 1 > _LP_LINE_WIDTH and line.strip():
            lines.append(line)
            line = '   '
        line = f"{line} {token}"
    lines.append(line)
    return lines


def export_lp(model: PBModel) -> str:
    """
    导出为CPLEX LP格式 含Maximize/Subject To/Binary三段 变量使用模型中的名字

    Args:
        model (PBModel): 模型

    Returns:
        str: LF换行的文本 相同模型逐字节一致
    """

    lines = [f"\\ {comment}" for comment in model.comments]

    lines.append("Maximize")
    objective = [(coef, var) for var, coef in sorted(model.objective.items()) if coef]
    lines.extend(_lp_expr(model, objective, " obj:"))

    lines.append("Subject To")
    used = set()
    for idx, constraint in enumerate(model.constraints):
        name = _lp_name(constraint.name) if constraint.name else f"c{idx}"
        if name in used:
            name = f"{name}_{idx}"
        used.add(name)
        expr = _lp_expr(model, constraint.terms, f" {name}:")
        expr[-1] = f"{expr[-1]} {constraint.sense} {constraint.rhs}"
        lines.extend(expr)

    lines.append("Binary")
    row: List[str] = []
    for name in model.var_names:
        row.append(name)
        if len(row) == 10:
            lines.append(' ' + ' '.join(row))
            row = []
    if row:
        lines.append(' ' + ' '.join(row))

    lines.append("End")
    return '\n'.join(lines) + '\n'


_SECTIONS = {
    'maximize': 'objective',
    'maximum': 'objective',
    'max': 'objective',
    'subject to': 'constraints',
    'such that': 'constraints',
    'st': 'constraints',
    's.t.': 'constraints',
    'binary': 'binary',
    'binaries': 'binary',
    'end': 'end',
}


def _parse_expr(tokens: List[str], lineno: int) -> List[Tuple[int, str]]:
    terms = []
    sign = 1
    coef: Optional[int] = None
    for token in tokens:
        if token in ('+', '-'):
            sign = 1 if token == '+' else -1
        elif re.fullmatch(r'\d+', token):
            coef = int(token)
        else:
            terms.append((sign * (1 if coef is None else coef), token))
            sign, coef = 1, None
    if coef is not None:
        raise ParseError("dangling coefficient", lineno)
    return terms


def parse_lp(text: str) -> PBModel:
    """
    解析export_lp写出的LP文本

    变量id按Binary段中的出现顺序分配 约束名不参与结构比较

    Raises:
        ParseError
    """

    section = None
    comments: List[str] = []
    objective_lines: List[str] = []
    constraint_lines: List[Tuple[int, str]] = []
    names: List[str] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('\\'):
            if section is None:
                comments.append(line[1:].strip())
            continue

        key = line.lower()
        if key in _SECTIONS:
            section = _SECTIONS[key]
            continue

        if section == 'objective':
            objective_lines.append(line)
        elif section == 'constraints':
            if re.match(r'^[A-Za-z0-9_.]+:', line):
                constraint_lines.append((lineno, line))
            elif constraint_lines:
                prev_lineno, prev = constraint_lines[-1]
                constraint_lines[-1] = (prev_lineno, f"{prev} {line}")
            else:
                raise ParseError("constraint continuation without a constraint", lineno)
        elif section == 'binary':
            names.extend(line.split())
        elif section == 'end':
            break
        else:
            raise ParseError(f"text outside any section: {line[:40]}", lineno)

    model = PBModel()
    model.comments = comments
    for name in names:
        model.add_var(name)

    def var_of(name: str, lineno: int) -> int:
        try:
            return model.var(name)
        except KeyError:
            raise ParseError(f"variable {name} is not declared binary", lineno) from None

    if objective_lines:
        body = ' '.join(objective_lines)
        if ':' in body:
            body = body.split(':', 1)[1]
        for coef, name in _parse_expr(body.split(), 0):
            var = var_of(name, 0)
            model.objective[var] = model.objective.get(var, 0) + coef
        model.objective = {var: coef for var, coef in model.objective.items() if coef}

    for lineno, line in constraint_lines:
        name, body = line.split(':', 1)
        tokens = body.split()
        sense_pos = next((pos for pos, tok in enumerate(tokens) if tok in (LE, GE, EQ, '=<', '=>')), None)
        if sense_pos is None or sense_pos != len(tokens) - 2:
            raise ParseError("malformed constraint", lineno)
        sense = {'=<': LE, '=>': GE}.get(tokens[sense_pos], tokens[sense_pos])
        try:
            rhs = int(tokens[-1])
        except ValueError:
            raise ParseError(f"malformed right-hand side {tokens[-1]}", lineno) from None
        terms = [(coef, var_of(var_name, lineno)) for coef, var_name in _parse_expr(tokens[:sense_pos], lineno)]
        model.constraints.append(Constraint(terms, sense, rhs, name.strip()))

    return model
