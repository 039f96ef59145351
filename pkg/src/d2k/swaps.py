"""Edge-swap moves over realizations and swap-neighborhood enumeration.

Three move kinds:

* jdam_double: crossing rewire of two edges that share a cell on one side,
  so every cell-pair count of the joint degree/side matrix is preserved;
* degree_double: crossing rewire of two arbitrary directed edges, which
  preserves every in- and out-degree (but not the joint matrix);
* c6_reverse: reversal of a directed 3-cycle, the extra move needed on top
  of double swaps for degree-preserving connectivity.

A swap is accepted only when the result stays simple; on the bipartite
form, non-chords block moves exactly like self-loops do, unless the
experimental self-loop-permitting flag is set.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SwapError
from .graph import BipartiteGraph, DirectedGraph
from .targets import CellKey, MODE_DEGREE, MODE_PAIR

Edge = tuple[int, int]


@dataclass(frozen=True)
class SwapProposal:
    kind: str                      # jdam_double | degree_double | c6_reverse
    removed: tuple[Edge, ...]
    added: tuple[Edge, ...]


def double_swap_proposal(e1: Edge, e2: Edge,
                         kind: str = "degree_double") -> SwapProposal:
    """Crossing rewire of two edges: (a,b),(c,d) -> (a,d),(c,b)."""
    (a, b), (c, d) = e1, e2
    if a == c or b == d:
        raise SwapError(f"degenerate double swap of {e1} and {e2}")
    if kind not in ("degree_double", "jdam_double"):
        raise SwapError(f"not a double-swap kind: {kind}")
    return SwapProposal(kind, (e1, e2), ((a, d), (c, b)))


def c6_reverse_proposal(a: int, b: int, c: int) -> SwapProposal:
    """Reversal of the directed 3-cycle a->b->c->a."""
    if len({a, b, c}) != 3:
        raise SwapError("3-cycle nodes must be distinct")
    return SwapProposal("c6_reverse",
                        ((a, b), (b, c), (c, a)),
                        ((b, a), (c, b), (a, c)))


def _bip_cell(b_out_deg, b_in_deg, node: int, side: str, mode: str) -> CellKey:
    if mode == MODE_DEGREE:
        return CellKey(side, b_out_deg(node) if side == "out" else b_in_deg(node))
    if mode == MODE_PAIR:
        return CellKey(side, (b_in_deg(node), b_out_deg(node)))
    raise ValueError(f"unknown mode {mode!r}")


def apply_swap(g: DirectedGraph | BipartiteGraph, p: SwapProposal,
               mode: str = MODE_DEGREE,
               allow_self_loops: bool = False):
    """Apply p to g, returning the updated graph or None when rejected.

    Rejection means the result would not be simple: an added edge already
    exists, or collapses to a self-loop / violated non-chord (unless
    allow_self_loops is set, which only the bipartite form supports).
    Nonexistent removed edges or a proposal that does not preserve its
    kind's invariant raise SwapError.
    """
    bipartite = isinstance(g, BipartiteGraph)
    if allow_self_loops and not bipartite:
        raise SwapError("self-loop-permitting swaps require the bipartite form")
    edge_set = set(g.edge_set()) if bipartite else set(g.edges())
    n = g.n_orig if bipartite else g.n

    if len(set(p.removed)) != len(p.removed):
        raise SwapError("removed edges are not distinct")
    for e in p.removed:
        if e not in edge_set:
            raise SwapError(f"removed edge {e} does not exist")
    _validate_kind(g, p, mode)

    result = edge_set - set(p.removed)
    for u, v in p.added:
        if (u, v) in result:
            return None               # parallel edge
        if u == v and not allow_self_loops:
            return None               # self-loop / non-chord violation
        result.add((u, v))

    if bipartite:
        out_nbrs: list[list[int]] = [[] for _ in range(n)]
        in_nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(result):
            out_nbrs[u].append(v)
            in_nbrs[v].append(u)
        return BipartiteGraph(n, out_nbrs, in_nbrs, g.non_chords)
    return DirectedGraph.from_edges(n, sorted(result))


def _validate_kind(g, p: SwapProposal, mode: str) -> None:
    if p.kind == "degree_double" or p.kind == "jdam_double":
        if len(p.removed) != 2 or len(p.added) != 2:
            raise SwapError("double swap must move exactly two edges")
        (a, b), (c, d) = p.removed
        if p.added not in (((a, d), (c, b)), ((c, b), (a, d))):
            raise SwapError("double swap must cross the removed endpoints")
        if p.kind == "jdam_double":
            odeg = g.out_degree
            ideg = g.in_degree
            same_out = _bip_cell(odeg, ideg, a, "out", mode) == \
                _bip_cell(odeg, ideg, c, "out", mode)
            same_in = _bip_cell(odeg, ideg, b, "in", mode) == \
                _bip_cell(odeg, ideg, d, "in", mode)
            if not (same_out or same_in):
                raise SwapError(
                    "jdam double swap requires a shared cell on one side")
    elif p.kind == "c6_reverse":
        if len(p.removed) != 3:
            raise SwapError("3-cycle reversal must move exactly three edges")
        (a, b), (b2, c), (c2, a2) = p.removed
        if b != b2 or c != c2 or a != a2:
            raise SwapError("removed edges do not form a directed 3-cycle")
        if p.added != ((b, a), (c, b), (a, c)):
            raise SwapError("added edges must be the reversed cycle")
    else:
        raise SwapError(f"unknown swap kind {p.kind!r}")


def enumerate_jdam_swaps(b: BipartiteGraph,
                         mode: str = MODE_DEGREE) -> list[BipartiteGraph]:
    """All states reachable from b by one accepted jdam-preserving double swap.

    Deduplicated by edge set; the input state itself never appears (a
    non-degenerate accepted swap always changes the edge set).
    """
    edges = sorted(b.edge_set())
    out_cell = {u: _bip_cell(b.out_degree, b.in_degree, u, "out", mode)
                for u, _ in edges}
    in_cell = {v: _bip_cell(b.out_degree, b.in_degree, v, "in", mode)
               for _, v in edges}
    neighbors: list[BipartiteGraph] = []
    seen: set[frozenset[Edge]] = set()
    for i in range(len(edges)):
        a, bb = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if a == c or bb == d:
                continue
            if out_cell[a] != out_cell[c] and in_cell[bb] != in_cell[d]:
                continue
            p = double_swap_proposal((a, bb), (c, d), kind="jdam_double")
            res = apply_swap(b, p, mode=mode)
            if res is None:
                continue
            key = res.edge_set()
            if key not in seen:
                seen.add(key)
                neighbors.append(res)
    return neighbors
