# -*- coding:utf-8 -*-
import pytest

from conftest import complete_graph
from planarmax import (
    FormatMismatch,
    InfeasibleDegree,
    ParseError,
    RunRecord,
    detect_format,
    gen_random_regular,
    ingest,
    load_bench_config,
    parse_dimacs,
    parse_edgelist,
    records_to_csv,
    run_suite,
    summarize,
    write_dimacs,
)

HEADER = (
    "instance_name,formulation,status,objective,dual_bound,skewness_upper_bound,"
    "oracle,wall_time_ms,bnb_nodes,lazy_constraints,seed\n"
)


def test_detect_format():
    assert detect_format("a/k5.dimacs") == 'dimacs'
    assert detect_format("k5.COL") == 'dimacs'
    assert detect_format("k5.gml") == 'gml'
    assert detect_format("k5.txt") == 'edgelist'
    assert detect_format("k5") == 'edgelist'


def test_dimacs_roundtrip(tmp_path):
    g = complete_graph(5)
    path = tmp_path / "k5.dimacs"
    text = write_dimacs(g, path)
    assert text.startswith("c K5\np edge 5 10\ne 1 2\n")
    assert ingest(path) == g
    assert ingest(path).name == "k5"


def test_dimacs_errors():
    with pytest.raises(ParseError) as exc_info:
        parse_dimacs("p edge 3 1\ne 1 4\n")
    assert exc_info.value.line == 2
    with pytest.raises(ParseError):
        parse_dimacs("p edge 3 2\ne 1 2\n")
    with pytest.raises(ParseError) as exc_info:
        parse_dimacs("e 1 2\n")
    assert exc_info.value.line == 1


def test_edgelist(tmp_path):
    g = parse_edgelist("0 1 3\n")
    assert g.n == 2 and g.edges == ((0, 1),) and list(g.weights) == [3]

    g = parse_edgelist("source target\n# comment\n0 1\n1 2\n% other\n2 0 2\n")
    assert g.n == 3 and g.m == 3 and g.total_weight == 4

    path = tmp_path / "tri.edges"
    path.write_text("0 1\n1 2\n0 2\n", encoding='utf-8')
    assert ingest(path).m == 3


@pytest.mark.parametrize(
    "text,line",
    [
        ("0 1\n1 1\n", 2),
        ("0 1\n1 0\n", 2),
        ("0 1\n1 2 0\n", 2),
        ("0 1\n1 x\n", 2),
        ("0 1 2 3\n", 1),
    ],
)
def test_edgelist_errors(text, line):
    with pytest.raises(ParseError) as exc_info:
        parse_edgelist(text)
    assert exc_info.value.line == line


def test_gml(tmp_path):
    path = tmp_path / "path.gml"
    path.write_text(
        "graph [\n  node [ id 0 ]\n  node [ id 1 ]\n  node [ id 2 ]\n"
        "  edge [ source 0 target 1 weight 4 ]\n  edge [ source 1 target 2 ]\n]\n",
        encoding='utf-8',
    )
    g = ingest(path)
    assert g.n == 3 and g.m == 2 and g.total_weight == 5

    broken = tmp_path / "broken.gml"
    broken.write_text("graph [\n  node [ id 0 ]\n", encoding='utf-8')
    with pytest.raises(ParseError):
        ingest(broken)


def test_format_mismatch(tmp_path):
    path = tmp_path / "k5.gml"
    path.write_text(write_dimacs(complete_graph(5)), encoding='utf-8')
    with pytest.raises(FormatMismatch):
        ingest(path)
    with pytest.raises(FormatMismatch):
        ingest(path, 'yaml')
    assert ingest(path, 'dimacs').m == 10


def test_gen_random_regular():
    g = gen_random_regular(6, 3, seed=7)
    assert g.n == 6 and g.m == 9
    assert all(g.degree(v) == 3 for v in range(6))
    assert g.name == "rr_n6_d3_s7"
    assert gen_random_regular(6, 3, seed=7) == g
    assert gen_random_regular(4, 0).m == 0

    with pytest.raises(InfeasibleDegree):
        gen_random_regular(5, 3)
    with pytest.raises(InfeasibleDegree):
        gen_random_regular(4, 4)


def test_flat_config(tmp_path):
    path = tmp_path / "bench.toml"
    path.write_text(
        "time_limit = 5.0\nunique_tree = false\nformulations = ['kuratowski']\n[Heuristic]\nseed = 3\n",
        encoding='utf-8',
    )
    settings = load_bench_config(path)
    assert settings['Solver']['time_limit'] == 5.0
    assert settings['LeftRight']['unique_tree'] is False
    assert settings['Bench']['formulations'] == ['kuratowski']
    assert settings['Heuristic']['seed'] == 3


def test_empty_corpus(tmp_path):
    assert run_suite(tmp_path) == HEADER


def test_records_to_csv():
    record = RunRecord("k5", "kuratowski", "Optimal", 9, 9, 1, 9, None, 3, 1, 0)
    assert records_to_csv([record]) == HEADER + "k5,kuratowski,Optimal,9,9,1,9,,3,1,0\n"
    assert record.is_optimal


def test_summarize():
    records = [
        RunRecord("a", "kuratowski", "Optimal"),
        RunRecord("b", "kuratowski", "TimeLimit"),
        RunRecord("a", "facialwalks", "Optimal"),
        RunRecord("b", "facialwalks", "Error"),
    ]
    assert summarize(records) == [("facialwalks", 1, 2, 0.5), ("kuratowski", 1, 2, 0.5)]
    assert summarize([]) == []


def _corpus(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    write_dimacs(complete_graph(5), corpus / "k5.dimacs")
    write_dimacs(complete_graph(6), corpus / "k6.dimacs")
    (corpus / "notes.md").write_text("ignored\n", encoding='utf-8')
    config = tmp_path / "bench.toml"
    config.write_text(
        "[Bench]\nformulations = ['kuratowski', 'facialwalks']\nrecord_wall_time = false\n", encoding='utf-8'
    )
    return corpus, config


def test_run_suite(tmp_path):
    corpus, config = _corpus(tmp_path)
    output = tmp_path / "out.csv"
    text = run_suite(corpus, config, output)
    assert output.read_text(encoding='utf-8') == text

    lines = text.splitlines()
    assert lines[0] + "\n" == HEADER
    rows = [line.split(',') for line in lines[1:]]
    assert [(row[0], row[1]) for row in rows] == [
        ("k5", "kuratowski"),
        ("k5", "facialwalks"),
        ("k6", "kuratowski"),
        ("k6", "facialwalks"),
    ]
    expected = {"k5": 9, "k6": 12}
    for row in rows:
        assert row[2] == "Optimal"
        assert int(row[3]) == expected[row[0]]
        assert int(row[6]) == expected[row[0]]
        assert row[7] == ""

    assert run_suite(corpus, config) == text


@pytest.mark.slow
def test_run_suite_parallel(tmp_path):
    corpus, config = _corpus(tmp_path)
    assert run_suite(corpus, config, jobs=2) == run_suite(corpus, config, jobs=1)
