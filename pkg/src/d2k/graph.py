"""Simple directed graphs and their bipartite split representation.

A directed graph over dense integer ids 0..n-1 is stored with both out- and
in-adjacency plus a constant-time edge-membership set.  The bipartite view
splits every node v into an out-side copy and an in-side copy; a directed
edge u->v becomes the undirected bipartite edge (u_out, v_in).  The pair
(v_in, v_out) of one and the same node is a *non-chord*: an edge there would
collapse to a self-loop, so it is forbidden whenever both degrees of v are
positive.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

from .errors import D2KError, EdgeListFormatError

MUTUAL = "mutual"
ASYMMETRIC = "asymmetric"
NULL = "null"


class DirectedGraph:
    """Immutable-by-convention simple digraph.

    Build instances through :func:`from_edge_list` or
    :meth:`DirectedGraph.from_edges`; the constructor trusts its input and
    only asserts simplicity.
    """

    __slots__ = ("n", "m", "out_adj", "in_adj", "orig_ids", "_edge_set")

    def __init__(self, n: int, out_adj: list[list[int]],
                 orig_ids: list[int] | None = None):
        if len(out_adj) != n:
            raise ValueError("adjacency length does not match node count")
        in_adj: list[list[int]] = [[] for _ in range(n)]
        edge_set: set[tuple[int, int]] = set()
        m = 0
        for u, nbrs in enumerate(out_adj):
            for v in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at node {u}")
                if (u, v) in edge_set:
                    raise ValueError(f"parallel edge {u}->{v}")
                edge_set.add((u, v))
                in_adj[v].append(u)
                m += 1
        self.n = n
        self.m = m
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.orig_ids = orig_ids
        self._edge_set = edge_set

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   orig_ids: list[int] | None = None) -> "DirectedGraph":
        out_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            out_adj[u].append(v)
        return cls(n, out_adj, orig_ids)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.out_adj):
            for v in nbrs:
                yield u, v

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def degree_pairs(self) -> list[tuple[int, int]]:
        """Per-node (in-degree, out-degree) pairs in node order."""
        return [(len(self.in_adj[v]), len(self.out_adj[v]))
                for v in range(self.n)]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edge_set)

    def original_id(self, v: int) -> int:
        return v if self.orig_ids is None else self.orig_ids[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.n == other.n and self._edge_set == other._edge_set

    def __hash__(self):  # pragma: no cover - graphs are not meant as keys
        return hash((self.n, frozenset(self._edge_set)))

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, m={self.m})"


def from_edge_list(pairs: Sequence[tuple[int, int]] | Iterable) -> DirectedGraph:
    """Build a simple digraph from raw (source, target) id pairs.

    Ids may be arbitrary non-negative integers; they are remapped to dense
    0..n-1 in first-appearance order (the original ids are kept on the
    graph).  Self-loop pairs are dropped before ids are registered, and
    duplicate ordered pairs collapse to one edge.

    Raises EdgeListFormatError for a malformed pair, reporting its position.
    """
    remap: dict[int, int] = {}
    out_adj: list[list[int]] = []
    edge_seen: set[tuple[int, int]] = set()

    def dense(orig: int) -> int:
        idx = remap.get(orig)
        if idx is None:
            idx = len(remap)
            remap[orig] = idx
            out_adj.append([])
        return idx

    for pos, pair in enumerate(pairs):
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise EdgeListFormatError(
                f"pair at position {pos} is not a (source, target) pair: {pair!r}",
                position=pos) from None
        if not isinstance(u, int) or not isinstance(v, int) \
                or isinstance(u, bool) or isinstance(v, bool):
            raise EdgeListFormatError(
                f"pair at position {pos} has non-integer ids: {pair!r}",
                position=pos)
        if u < 0 or v < 0:
            raise EdgeListFormatError(
                f"pair at position {pos} has negative ids: {pair!r}",
                position=pos)
        if u == v:
            continue
        du, dv = dense(u), dense(v)
        if (du, dv) in edge_seen:
            continue
        edge_seen.add((du, dv))
        out_adj[du].append(dv)

    orig_ids = list(remap)
    return DirectedGraph(len(out_adj), out_adj, orig_ids or None)


def dyad_state(g: DirectedGraph, u: int, v: int) -> str:
    """Classify the unordered pair {u, v} as mutual, asymmetric or null."""
    if u == v:
        raise ValueError("dyad state is undefined for a single node")
    uv = g.has_edge(u, v)
    vu = g.has_edge(v, u)
    if uv and vu:
        return MUTUAL
    if uv or vu:
        return ASYMMETRIC
    return NULL


class BipartiteGraph:
    """Undirected bipartite split of a digraph.

    Original node v appears as an out-side copy and an in-side copy; every
    edge joins an out-side node to an in-side node.  ``non_chords`` holds
    the original ids whose (v_in, v_out) pair is forbidden.  Adjacency is
    indexed by original node id per side.
    """

    __slots__ = ("n_orig", "out_nbrs", "in_nbrs", "non_chords")

    def __init__(self, n_orig: int, out_nbrs: list[list[int]],
                 in_nbrs: list[list[int]], non_chords: frozenset[int]):
        self.n_orig = n_orig
        self.out_nbrs = out_nbrs      # out-side node v -> in-side partners
        self.in_nbrs = in_nbrs        # in-side node v -> out-side partners
        self.non_chords = non_chords

    def edges(self) -> Iterator[tuple[int, int]]:
        """Bipartite edges as (out-side id, in-side id) pairs."""
        for u, nbrs in enumerate(self.out_nbrs):
            for v in nbrs:
                yield u, v

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.out_nbrs)

    def out_degree(self, v: int) -> int:
        return len(self.out_nbrs[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_nbrs[v])

    def validate(self, strict_non_chords: bool = True) -> None:
        """Check the bipartite invariants, raising D2KError on violation."""
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges():
            if not (0 <= u < self.n_orig and 0 <= v < self.n_orig):
                raise D2KError(f"bipartite edge ({u},{v}) out of range")
            if (u, v) in seen:
                raise D2KError(f"parallel bipartite edge ({u},{v})")
            seen.add((u, v))
            if strict_non_chords and u == v:
                raise D2KError(f"edge on the non-chord of node {u}")
        for v in range(self.n_orig):
            for u in self.in_nbrs[v]:
                if (u, v) not in seen:
                    raise D2KError("out/in adjacency out of sync")
        if sum(len(x) for x in self.in_nbrs) != len(seen):
            raise D2KError("out/in adjacency out of sync")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.n_orig == other.n_orig
                and self.edge_set() == other.edge_set()
                and self.non_chords == other.non_chords)

    def __hash__(self):  # pragma: no cover
        return hash((self.n_orig, self.edge_set(), self.non_chords))

    def __repr__(self) -> str:
        return f"BipartiteGraph(n_orig={self.n_orig}, m={self.m})"


def to_bipartite(g: DirectedGraph) -> BipartiteGraph:
    """Split g into its bipartite representation.

    Non-chords exist only for nodes with both degrees positive; on a
    zero-degree side the constraint is vacuous and omitted.
    """
    out_nbrs = [list(nbrs) for nbrs in g.out_adj]
    in_nbrs = [list(nbrs) for nbrs in g.in_adj]
    non_chords = frozenset(
        v for v in range(g.n)
        if g.in_degree(v) > 0 and g.out_degree(v) > 0)
    return BipartiteGraph(g.n, out_nbrs, in_nbrs, non_chords)


def collapse_bipartite(b: BipartiteGraph) -> DirectedGraph:
    """Collapse a bipartite split back into a simple digraph.

    Rejects inputs violating the bipartite invariants; in particular an
    edge sitting on a non-chord (or on any same-node pair) would produce a
    self-loop and is an error.
    """
    b.validate(strict_non_chords=True)
    return DirectedGraph(b.n_orig, [list(nbrs) for nbrs in b.out_nbrs])
