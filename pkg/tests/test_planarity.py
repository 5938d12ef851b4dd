# -*- coding:utf-8 -*-
import itertools

import numpy as np
import pytest

from conftest import complete_bipartite, complete_graph, petersen, random_connected
from planarmax import (
    EdgeSelection,
    InconsistentRotation,
    LengthMismatch,
    NotNonPlanar,
    UnclassifiedCounterexample,
    build_graph,
    classify_subdivision,
    expected_face_count,
    extract_kuratowskis,
    has_kuratowski_subdivision,
    is_planar,
    round_selection,
    test_planarity,
    verify_embedding,
)


def test_small_cases(k4, k5, k33):
    assert test_planarity(k4).is_planar
    assert not test_planarity(k5)
    assert not is_planar(k33)
    assert is_planar(k5, EdgeSelection.all_ones(k5).with_bit(0, 0))


def test_embedding_satisfies_euler(grid33, k4):
    for g in (grid33, k4):
        sel = EdgeSelection.all_ones(g)
        res = test_planarity(g, sel)
        assert verify_embedding(g, sel, res.embedding) == 2 - g.n + g.m


def test_embedding_of_forest():
    g = build_graph(5, [(0, 1), (1, 2), (3, 4)])
    sel = EdgeSelection.all_ones(g)
    res = test_planarity(g, sel)
    assert verify_embedding(g, sel, res.embedding) == expected_face_count(g, sel) == 2


def test_verify_embedding_mismatch(k4):
    sel = EdgeSelection.all_ones(k4)
    emb = test_planarity(k4, sel).embedding
    with pytest.raises(InconsistentRotation):
        verify_embedding(k4, sel.with_bit(0, 0), emb)


def test_extract_single(k5, k33):
    (sub,) = extract_kuratowskis(k5, EdgeSelection.all_ones(k5), 1)
    assert sub.kind == 'K5'
    assert len(sub) == 10
    (sub,) = extract_kuratowskis(k33, EdgeSelection.all_ones(k33), 1)
    assert sub.kind == 'K33'
    assert len(sub) == 9


def test_extract_many_are_distinct_subdivisions(k6):
    subs = extract_kuratowskis(k6, EdgeSelection.all_ones(k6), 10)
    assert 1 < len(subs) <= 10
    assert len({sub.edge_set for sub in subs}) == len(subs)
    for sub in subs:
        assert classify_subdivision(k6, sub.edges) is not None
        assert not is_planar(k6, EdgeSelection.from_edges(k6, sub.edges))


def test_extract_planar_raises(k4):
    with pytest.raises(NotNonPlanar):
        extract_kuratowskis(k4, EdgeSelection.all_ones(k4), 5)


def test_classify_rejects_non_subdivisions(k5):
    assert classify_subdivision(k5, range(9)) is None


def test_classify_subdivided_k33():
    # K3,3 其中一条边被节点6细分
    g = complete_bipartite(3, 3)
    edges = [e for e in g.edges if e != (0, 3)] + [(0, 6), (6, 3)]
    h = build_graph(7, edges)
    sub = classify_subdivision(h, range(h.m))
    assert sub is not None and sub.kind == 'K33'
    assert sub.branch_nodes == (0, 1, 2, 3, 4, 5)


def test_round_selection(k4):
    values = [1.0, 0.95, 0.5, 0.991, 0.0, 0.9]
    assert round_selection(k4, values, 0.99).bits == (1, 0, 0, 1, 0, 0)
    assert round_selection(k4, values, 0.9).bits == (1, 1, 0, 1, 0, 1)


def test_round_selection_length(k4):
    with pytest.raises(LengthMismatch):
        round_selection(k4, [1.0] * 5, 0.9)


def test_unclassified_counterexample_is_not_planar(monkeypatch, k5):
    monkeypatch.setattr("planarmax.planarity.classify_subdivision", lambda g, edge_ids: None)
    with pytest.raises(UnclassifiedCounterexample):
        extract_kuratowskis(k5, EdgeSelection.all_ones(k5), 1)


def test_unclassified_reextraction_is_skipped(monkeypatch, k6):
    real = classify_subdivision
    calls = []

    def first_only(g, edge_ids):
        calls.append(1)
        return real(g, edge_ids) if len(calls) == 1 else None

    monkeypatch.setattr("planarmax.planarity.classify_subdivision", first_only)
    subs = extract_kuratowskis(k6, EdgeSelection.all_ones(k6), 5)
    assert len(subs) == 1
    assert len(calls) > 1


def _exhaustive_catalog():
    for n in range(5, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for m in (9, 10):
            for edges in itertools.islice(itertools.combinations(pairs, m), 0, None, 97):
                yield build_graph(n, edges)


def test_matches_subdivision_search_on_catalog():
    for g in _exhaustive_catalog():
        assert is_planar(g) == (not has_kuratowski_subdivision(g))


@pytest.mark.slow
def test_matches_subdivision_search_on_random_graphs():
    rng = np.random.default_rng(7)
    for seed in range(200):
        n = int(rng.integers(5, 9))
        m = int(rng.integers(n + 2, min(3 * n - 3, n * (n - 1) // 2) + 1))
        g = random_connected(n, m, seed)
        assert is_planar(g) == (not has_kuratowski_subdivision(g))


def test_named_graphs_against_subdivision_search():
    for g in (complete_graph(5), complete_bipartite(3, 3), petersen()):
        assert has_kuratowski_subdivision(g)
        assert not is_planar(g)
