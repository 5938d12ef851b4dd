# -*- coding:utf-8 -*-
from conftest import complete_graph
from planarmax import write_dimacs
from planarmax.cli import EXIT_INTERNAL, EXIT_OK, EXIT_PARSE_ERROR, main


def _k5(tmp_path):
    path = tmp_path / "k5.dimacs"
    write_dimacs(complete_graph(5), path)
    return path


def test_solve(tmp_path, capsys):
    assert main(['solve', str(_k5(tmp_path))]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "status Optimal" in lines
    assert "weight 9" in lines
    assert "skewness 1" in lines
    assert sum(1 for line in lines if line.startswith("e ")) == 9


def test_solve_with_exports(tmp_path):
    opb, lp = tmp_path / "k5.opb", tmp_path / "k5.lp"
    code = main(['solve', str(_k5(tmp_path)), '-f', 'facialwalks', '--export-opb', str(opb), '--export-lp', str(lp)])
    assert code == EXIT_OK
    assert opb.read_text(encoding='utf-8').startswith("* #variable= ")
    assert lp.read_text(encoding='utf-8').endswith("End\n")


def test_kuratowski_export_lists_found_constraints(tmp_path):
    opb = tmp_path / "k5.opb"
    assert main(['solve', str(_k5(tmp_path)), '--export-opb', str(opb)]) == EXIT_OK
    assert opb.read_text(encoding='utf-8').splitlines()[0] == "* #variable= 10 #constraint= 2"


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n1 1\n", encoding='utf-8')
    assert main(['solve', str(path)]) == EXIT_PARSE_ERROR
    assert main(['oracle', str(path)]) == EXIT_PARSE_ERROR


def test_oracle(tmp_path, capsys):
    assert main(['oracle', str(_k5(tmp_path))]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "skewness 1" in lines and "weight 9" in lines


def test_oracle_too_large(tmp_path):
    assert main(['oracle', str(_k5(tmp_path)), '--max-edges', '5']) == EXIT_INTERNAL


def test_gen(capsys):
    assert main(['gen', '--n', '6', '--d', '3', '--seed', '1']) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("c rr_n6_d3_s1\np edge 6 9\n")
    assert len(out.splitlines()) == 11


def test_gen_infeasible(tmp_path):
    assert main(['gen', '--n', '5', '--d', '3']) == EXIT_PARSE_ERROR
    output = tmp_path / "g.dimacs"
    assert main(['gen', '--n', '8', '--d', '3', '-o', str(output)]) == EXIT_OK
    assert output.read_text(encoding='utf-8').count("\ne ") == 12


def test_bench(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    write_dimacs(complete_graph(5), corpus / "k5.dimacs")
    config = tmp_path / "bench.toml"
    config.write_text("formulations = ['kuratowski']\nrecord_wall_time = false\n", encoding='utf-8')
    output = tmp_path / "out.csv"
    assert main(['bench', str(corpus), '--config', str(config), '-o', str(output)]) == EXIT_OK
    lines = output.read_text(encoding='utf-8').splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("k5,kuratowski,Optimal,9,9,")
