from __future__ import annotations

import random

import pytest

from conftest import all_digraphs, random_digraph
from d2k import (ASYMMETRIC, BipartiteGraph, D2KError, DirectedGraph,
                 EdgeListFormatError, MUTUAL, NULL, collapse_bipartite,
                 dyad_state, from_edge_list, to_bipartite)


def test_loop_and_duplicate_removal():
    g = from_edge_list([(0, 1), (1, 0), (1, 1), (0, 1)])
    assert g.n == 2
    assert g.m == 2
    assert g.edge_set() == {(0, 1), (1, 0)}


def test_empty_input():
    g = from_edge_list([])
    assert g.n == 0
    assert g.m == 0


def test_sparse_ids_remap_in_first_appearance_order():
    g = from_edge_list([(10, 3), (3, 99), (10, 99)])
    assert g.n == 3
    assert g.orig_ids == [10, 3, 99]
    assert g.edge_set() == {(0, 1), (1, 2), (0, 2)}


def test_malformed_pairs_report_position():
    with pytest.raises(EdgeListFormatError) as exc:
        from_edge_list([(0, 1), (2,)])
    assert exc.value.position == 1
    with pytest.raises(EdgeListFormatError):
        from_edge_list([(0, "x")])
    with pytest.raises(EdgeListFormatError) as exc:
        from_edge_list([(0, 1), (1, 2), (-1, 0)])
    assert exc.value.position == 2


def _original_edges(g: DirectedGraph) -> set[tuple[int, int]]:
    return {(g.original_id(u), g.original_id(v)) for u, v in g.edges()}


def test_ingestion_idempotence():
    # Re-ingesting the emitted edge list reproduces the same graph over the
    # original labels (dense numbering is an internal artifact of order).
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 25)
        raw = [(rng.randrange(n), rng.randrange(n)) for _ in range(40)]
        g = from_edge_list(raw)
        again = from_edge_list(sorted(_original_edges(g)))
        assert again.n == g.n
        assert again.m == g.m
        assert _original_edges(again) == _original_edges(g)
        assert sorted(again.orig_ids or []) == sorted(g.orig_ids or [])


def test_degree_conservation():
    rng = random.Random(6)
    for _ in range(20):
        g = random_digraph(rng, rng.randint(1, 40), 0.2)
        assert sum(g.in_degree(v) for v in range(g.n)) == g.m
        assert sum(g.out_degree(v) for v in range(g.n)) == g.m


def test_constructor_rejects_nonsimple():
    with pytest.raises(ValueError):
        DirectedGraph(2, [[0], []])          # self-loop
    with pytest.raises(ValueError):
        DirectedGraph(2, [[1, 1], []])       # parallel edge


def test_dyad_state():
    g = from_edge_list([(0, 1), (1, 0), (1, 2)])
    assert dyad_state(g, 0, 1) == MUTUAL
    assert dyad_state(g, 1, 2) == ASYMMETRIC
    assert dyad_state(g, 2, 1) == ASYMMETRIC
    assert dyad_state(g, 0, 2) == NULL
    with pytest.raises(ValueError):
        dyad_state(g, 1, 1)


def test_to_bipartite_three_cycle():
    g = from_edge_list([(0, 1), (1, 2), (2, 0)])
    b = to_bipartite(g)
    assert b.m == 3
    assert b.non_chords == {0, 1, 2}
    assert b.edge_set() == {(0, 1), (1, 2), (2, 0)}
    b.validate()


def test_to_bipartite_single_edge_has_no_non_chords():
    b = to_bipartite(from_edge_list([(0, 1)]))
    assert b.m == 1
    assert b.non_chords == frozenset()


def test_collapse_inverts_split_exhaustively():
    for n in (1, 2, 3):
        for g in all_digraphs(n):
            assert collapse_bipartite(to_bipartite(g)) == g


def test_collapse_inverts_split_random():
    rng = random.Random(11)
    for _ in range(100):
        g = random_digraph(rng, rng.randint(1, 50), rng.uniform(0.02, 0.4))
        assert collapse_bipartite(to_bipartite(g)) == g


def test_collapse_roundtrip_larger():
    rng = random.Random(12)
    g = random_digraph(rng, 200, 0.05)
    assert collapse_bipartite(to_bipartite(g)) == g


def test_collapse_rejects_non_chord_edge():
    b = BipartiteGraph(2, [[0, 1], []], [[0], [0]], frozenset({0}))
    with pytest.raises(D2KError):
        collapse_bipartite(b)


def test_collapse_rejects_out_of_sync_adjacency():
    b = BipartiteGraph(2, [[1], []], [[], []], frozenset())
    with pytest.raises(D2KError):
        collapse_bipartite(b)
