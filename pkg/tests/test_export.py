# -*- coding:utf-8 -*-
import pytest

from conftest import complete_graph, petersen
from planarmax import GE, LE, ParseError, PBModel, export_lp, export_opb, parse_lp, parse_opb
from planarmax.formulations.facialwalks import FacialWalkConfig, build_facialwalk_model
from planarmax.formulations.kuratowski import build_kuratowski_model
from planarmax.formulations.leftright import LeftRightConfig, build_leftright_model
from planarmax.formulations.schnyder import build_schnyder_model


def _single_var():
    model = PBModel('one')
    model.add_var('x', 1)
    return model


def test_opb_single_var():
    text = export_opb(_single_var())
    assert text == "* #variable= 1 #constraint= 0\nmin: -1 x1 ;\n"


def test_opb_rewrites_le_as_ge(k5):
    model = build_kuratowski_model(k5)
    text = export_opb(model)
    lines = text.splitlines()
    assert lines[0] == "* #variable= 10 #constraint= 1"
    assert lines[1].startswith("* Kuratowski")
    assert lines[-1] == ' '.join(f"-1 x{i}" for i in range(1, 11)) + " >= -9 ;"
    assert text == export_opb(build_kuratowski_model(k5))
    assert '\r' not in text


def test_opb_parse_structure(k5):
    model = build_kuratowski_model(k5)
    parsed = parse_opb(export_opb(model))
    assert parsed.num_vars == 10
    assert len(parsed.constraints) == 1
    (constraint,) = parsed.constraints
    assert constraint.sense == GE and constraint.rhs == -9
    assert parsed.objective == {var: 1 for var in range(10)}


def test_opb_parse_errors():
    with pytest.raises(ParseError) as exc_info:
        parse_opb("* #variable= 1 #constraint= 1\n+1 x1 >= 1\n")
    assert exc_info.value.line == 2


def test_lp_single_var():
    text = export_lp(_single_var())
    assert text.splitlines() == ["Maximize", " obj: 1 x", "Subject To", "Binary", " x", "End"]


def test_lp_sections_and_comments(k5):
    text = export_lp(build_kuratowski_model(k5))
    lines = text.splitlines()
    assert lines[0].startswith("\\ ")
    assert "Maximize" in lines and "Subject To" in lines and "Binary" in lines
    assert lines[-1] == "End"
    assert " euler: 1 s_e0 + 1 s_e1" in text
    assert text == export_lp(build_kuratowski_model(k5))


@pytest.mark.parametrize(
    "build",
    [
        build_kuratowski_model,
        lambda g: build_facialwalk_model(g, FacialWalkConfig()),
        lambda g: build_facialwalk_model(g, FacialWalkConfig(profile='ilp')),
        build_schnyder_model,
        lambda g: build_leftright_model(g, LeftRightConfig()),
    ],
)
def test_lp_roundtrip(build):
    for g in (complete_graph(4), complete_graph(5)):
        model = build(g)
        assert parse_lp(export_lp(model)).structurally_equal(model)


def test_lp_roundtrip_long_rows():
    # Petersen上面行走模型的欧拉约束超过一行宽度
    model = build_facialwalk_model(petersen(), FacialWalkConfig())
    text = export_lp(model)
    assert max(len(line) for line in text.splitlines()) <= 220
    assert parse_lp(text).structurally_equal(model)


def test_lp_negative_coefficients():
    model = PBModel('neg')
    a = model.add_var('a', -2)
    b = model.add_var('b', 3)
    model.le({a: -1, b: 2}, -1, 'c0')
    model.ge({a: 1}, 0)
    parsed = parse_lp(export_lp(model))
    assert parsed.structurally_equal(model)
    assert parsed.constraints[0].sense == LE


def test_lp_parse_errors():
    with pytest.raises(ParseError):
        parse_lp("Maximize\n obj: 1 x\nSubject To\n c0: 1 y <= 1\nBinary\n x\nEnd\n")
    with pytest.raises(ParseError) as exc_info:
        parse_lp("garbage\n")
    assert exc_info.value.line == 1
