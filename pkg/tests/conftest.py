"""Shared helpers: random graph makers, exhaustive enumerations, and the
brute-force oracles the fast metric implementations are checked against.

The oracles deliberately take the dumb route (triple loops, distance
matrices, structural classification) so they stay independent of the
implementations under test.
"""
from __future__ import annotations

import os
import random
from pathlib import Path

from d2k import DirectedGraph


def random_digraph(rng: random.Random, n: int, p: float) -> DirectedGraph:
    edges = [(u, v) for u in range(n) for v in range(n)
             if u != v and rng.random() < p]
    return DirectedGraph.from_edges(n, edges)


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def all_digraphs(n: int):
    """Every simple digraph on n labeled nodes (2^(n(n-1)) of them)."""
    pairs = ordered_pairs(n)
    for bits in range(1 << len(pairs)):
        yield DirectedGraph.from_edges(
            n, [e for i, e in enumerate(pairs) if bits >> i & 1])


def dataset_dir() -> Path:
    return Path(os.environ.get("D2K_DATASETS", "datasets"))


def dataset_files() -> list[Path]:
    d = dataset_dir()
    if not d.is_dir():
        return []
    return sorted(p for p in d.iterdir() if p.suffix == ".txt")


# ---------------------------------------------------------------------------
# oracle: triad classification by structure (not by code table)

def classify_triad(g: DirectedGraph, a: int, b: int, c: int) -> str:
    nodes = (a, b, c)
    arcs = {(u, v) for u in nodes for v in nodes
            if u != v and g.has_edge(u, v)}
    mutual_pairs = []
    asym_arcs = []
    for u, v in ((a, b), (a, c), (b, c)):
        uv, vu = (u, v) in arcs, (v, u) in arcs
        if uv and vu:
            mutual_pairs.append((u, v))
        elif uv:
            asym_arcs.append((u, v))
        elif vu:
            asym_arcs.append((v, u))
    m, s = len(mutual_pairs), len(asym_arcs)
    if m == 3:
        return "300"
    if m == 2 and s == 1:
        return "210"
    if m == 2:
        return "201"
    if m == 1 and s == 2:
        third = next(v for v in nodes
                     if v not in mutual_pairs[0])
        into = sum(1 for u, v in asym_arcs if u == third)
        if into == 2:
            return "120D"
        if into == 0:
            return "120U"
        return "120C"
    if m == 1 and s == 1:
        third = next(v for v in nodes if v not in mutual_pairs[0])
        return "111D" if asym_arcs[0][0] == third else "111U"
    if m == 1:
        return "102"
    if s == 3:
        sources = {u for u, _ in asym_arcs}
        return "030C" if len(sources) == 3 else "030T"
    if s == 2:
        (u1, v1), (u2, v2) = asym_arcs
        if u1 == u2:
            return "021D"
        if v1 == v2:
            return "021U"
        return "021C"
    if s == 1:
        return "012"
    return "003"


def triad_census_bruteforce(g: DirectedGraph) -> dict[str, int]:
    from d2k.metrics import TRIAD_NAMES
    census = dict.fromkeys(TRIAD_NAMES, 0)
    for a in range(g.n):
        for b in range(a + 1, g.n):
            for c in range(b + 1, g.n):
                census[classify_triad(g, a, b, c)] += 1
    return census


# ---------------------------------------------------------------------------
# oracle: shared partners by triple loop

def dsp_bruteforce(g: DirectedGraph, variant: str) -> dict[int, int]:
    n = g.n
    hist: dict[int, int] = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            count = 0
            for w in range(n):
                if w in (i, j):
                    continue
                if variant == "independent_two_paths":
                    ok = g.has_edge(i, w) and g.has_edge(w, j)
                elif variant == "outgoing":
                    ok = g.has_edge(i, w) and g.has_edge(j, w)
                else:
                    ok = g.has_edge(w, i) and g.has_edge(w, j)
                count += 1 if ok else 0
            hist[count] = hist.get(count, 0) + 1
    return hist


# ---------------------------------------------------------------------------
# oracle: expansion by explicit two-step walk

def expansion_bruteforce(g: DirectedGraph, direction: str) -> list[float]:
    ratios = []
    for v in range(g.n):
        if direction == "out":
            first = {w for w in range(g.n) if g.has_edge(v, w)}
            second = {x for w in first for x in range(g.n) if g.has_edge(w, x)}
        else:
            first = {w for w in range(g.n) if g.has_edge(w, v)}
            second = {x for w in first for x in range(g.n) if g.has_edge(x, w)}
        if not first:
            continue
        second -= first
        second.discard(v)
        ratios.append(len(second) / len(first))
    return ratios


# ---------------------------------------------------------------------------
# oracle: betweenness from distance and path-count matrices

def _bfs_all(g: DirectedGraph, s: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    sigma = [0] * g.n
    dist[s] = 0
    sigma[s] = 1
    frontier = [s]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in g.out_adj[v]:
                if dist[w] == -1:
                    dist[w] = d
                    nxt.append(w)
                if dist[w] == d:
                    sigma[w] += sigma[v]
        frontier = nxt
    return dist, sigma


def betweenness_bruteforce(g: DirectedGraph, normalized: bool = True) -> list[float]:
    n = g.n
    dist = []
    sigma = []
    for s in range(n):
        d, sg = _bfs_all(g, s)
        dist.append(d)
        sigma.append(sg)
    bc = [0.0] * n
    for s in range(n):
        for t in range(n):
            if s == t or sigma[s][t] == 0:
                continue
            for v in range(n):
                if v in (s, t):
                    continue
                if dist[s][v] >= 0 and dist[v][t] >= 0 and \
                        dist[s][v] + dist[v][t] == dist[s][t]:
                    bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t]
    if normalized and n > 2:
        norm = (n - 1) * (n - 2)
        bc = [x / norm for x in bc]
    return bc


# ---------------------------------------------------------------------------
# oracle: components by reachability closure, cores by definition

def scc_bruteforce(g: DirectedGraph) -> dict[int, int]:
    n = g.n
    reach = [set(_reachable(g, v)) for v in range(n)]
    assigned = [False] * n
    hist: dict[int, int] = {}
    for v in range(n):
        if assigned[v]:
            continue
        comp = [w for w in range(n)
                if w in reach[v] and v in reach[w]]
        for w in comp:
            assigned[w] = True
        hist[len(comp)] = hist.get(len(comp), 0) + 1
    return hist


def _reachable(g: DirectedGraph, s: int):
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for w in g.out_adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def core_numbers_bruteforce(g: DirectedGraph) -> list[int]:
    n = g.n
    und = [set() for _ in range(n)]
    for u, v in g.edges():
        und[u].add(v)
        und[v].add(u)
    core = [0] * n
    k = 0
    alive = set(range(n))
    deg = {v: len(und[v]) for v in alive}
    while alive:
        k += 1
        while True:
            doomed = [v for v in alive if deg[v] < k]
            if not doomed:
                break
            for v in doomed:
                core[v] = k - 1     # survived the (k-1)-core, not the k-core
                alive.discard(v)
                for u in und[v]:
                    if u in alive:
                        deg[u] -= 1
    return core
