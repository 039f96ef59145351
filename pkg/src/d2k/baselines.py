"""Reference generators: fixed-size random digraphs, dyad-census graphs,
and directed degree-sequence realizations.

All three are deterministic per seed, always emit simple digraphs, and hit
their target quantity exactly (edge count, dyad census, degree sequence).
"""
from __future__ import annotations

import heapq
import random

from .errors import NotGraphicalError
from .graph import DirectedGraph
from .targets import DdsTargets, SizeTargets, UmanTargets

# Above this pair-universe size the dense sampling path is not attempted.
_ENUMERATION_CAP = 1 << 22


def gen_d0k(t: SizeTargets, seed: int = 1) -> DirectedGraph:
    """Uniform simple digraph with exactly t.m edges on t.n nodes.

    Rejection-samples ordered pairs in the sparse regime and samples the
    complement when more than half of all pairs are edges, which keeps the
    expected time near-linear at any density.
    """
    n, m = t.n, t.m
    universe = n * (n - 1)
    if m < 0 or m > universe:
        raise ValueError(f"edge count {m} out of range for n={n}")
    rng = random.Random(seed)
    if m > universe // 2:
        complement = _sample_ordered_pairs(n, universe - m, rng)
        edges = [(u, v) for u in range(n) for v in range(n)
                 if u != v and (u, v) not in complement]
        return DirectedGraph.from_edges(n, edges)
    return DirectedGraph.from_edges(n, sorted(_sample_ordered_pairs(n, m, rng)))


def _sample_ordered_pairs(n: int, count: int,
                          rng: random.Random) -> set[tuple[int, int]]:
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < count:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            chosen.add((u, v))
    return chosen


def gen_uman(t: UmanTargets, seed: int = 1) -> DirectedGraph:
    """Uniform digraph with the exact dyad census (mutual, asymmetric, null).

    Samples mutual+asymmetric distinct unordered pairs, then assigns states
    by a random partition of the sample; asymmetric dyads get a uniformly
    random orientation.
    """
    n = t.n
    total = n * (n - 1) // 2
    if min(t.mutual, t.asymmetric, t.null) < 0 or t.total() != total:
        raise ValueError(
            f"dyad counts {t.mutual}+{t.asymmetric}+{t.null} != C({n},2)={total}")
    rng = random.Random(seed)
    wanted = t.mutual + t.asymmetric
    if wanted > total // 2 and total <= _ENUMERATION_CAP:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        sample = rng.sample(pairs, wanted)
    else:
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < wanted:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u != v:
                chosen.add((min(u, v), max(u, v)))
        sample = sorted(chosen)
        rng.shuffle(sample)
    edges: list[tuple[int, int]] = []
    for i, (u, v) in enumerate(sample):
        if i < t.mutual:
            edges.append((u, v))
            edges.append((v, u))
        elif rng.random() < 0.5:
            edges.append((u, v))
        else:
            edges.append((v, u))
    return DirectedGraph.from_edges(n, edges)


def gen_d1k(t: DdsTargets, seed: int = 1,
            randomize_swaps: int | None = None) -> DirectedGraph:
    """Simple digraph with exactly the per-node (in, out) degrees of t.

    A greedy pass certifies graphicality by constructing one realization;
    a randomization pass then applies degree-preserving double edge swaps
    (and, with probability 0.1 per attempt, a directed-3-cycle reversal,
    which double swaps alone cannot reach).  Swaps are accepted only when
    the result stays simple, so degrees are never disturbed.
    """
    edges = _greedy_directed_realization(t, seed)
    g_edges = {e: i for i, e in enumerate(edges)}
    rng = random.Random(seed ^ 0x5EED)
    m = len(edges)
    attempts = 10 * m if randomize_swaps is None else randomize_swaps
    if m >= 2:
        out_sets: list[set[int]] = [set() for _ in range(t.n)]
        in_sets: list[set[int]] = [set() for _ in range(t.n)]
        for u, v in edges:
            out_sets[u].add(v)
            in_sets[v].add(u)

        def replace(old: tuple[int, int], new: tuple[int, int]) -> None:
            i = g_edges.pop(old)
            edges[i] = new
            g_edges[new] = i
            out_sets[old[0]].discard(old[1])
            in_sets[old[1]].discard(old[0])
            out_sets[new[0]].add(new[1])
            in_sets[new[1]].add(new[0])

        for _ in range(attempts):
            if rng.random() < 0.1:
                _try_c6_reverse(edges, g_edges, out_sets, in_sets, rng, replace)
                continue
            a, b = edges[rng.randrange(m)]
            c, d = edges[rng.randrange(m)]
            if a == d or c == b or a == c or b == d:
                continue
            if d in out_sets[a] or b in out_sets[c]:
                continue
            replace((a, b), (a, d))
            replace((c, d), (c, b))
    return DirectedGraph.from_edges(t.n, sorted(edges))


def _try_c6_reverse(edges, g_edges, out_sets, in_sets, rng, replace,
                    probes: int = 5) -> None:
    """Reverse one random directed 3-cycle, if one is found quickly."""
    m = len(edges)
    for _ in range(probes):
        a, b = edges[rng.randrange(m)]
        closers = [w for w in out_sets[b] if w != a and a in out_sets[w]]
        if not closers:
            continue
        w = rng.choice(closers)
        # Reversal must stay simple: none of the reversed arcs may exist.
        if a in out_sets[b] or b in out_sets[w] or w in out_sets[a]:
            continue
        replace((a, b), (b, a))
        replace((b, w), (w, b))
        replace((w, a), (a, w))
        return


def _greedy_directed_realization(t: DdsTargets, seed: int) -> list[tuple[int, int]]:
    """Kleitman-Wang style greedy: satisfy nodes in order of out-degree,
    wiring each to the lexicographically largest (in-remainder,
    out-remainder) targets.

    The lexicographic order is what certifies graphicality; a random
    tie-break on the in-remainder alone can strand a graphical sequence.
    Seeded randomness only permutes nodes whose full remainder pair ties.
    """
    n = t.n
    dds = t.dds
    if sum(d for d, _ in dds) != sum(d for _, d in dds):
        raise NotGraphicalError("in-degree and out-degree totals differ")
    for v, (d_in, d_out) in enumerate(dds):
        if d_in > n - 1 or d_out > n - 1:
            raise NotGraphicalError(
                f"node {v} has degree pair {dds[v]} on {n} nodes")

    rng = random.Random(seed)
    rank = list(range(n))
    rng.shuffle(rank)

    in_rem = [d_in for d_in, _ in dds]
    out_rem = [d_out for _, d_out in dds]
    # Max-heap over (in-remainder, out-remainder, tie rank); entries go
    # stale when a node's in-remainder changes and are skipped on pop.
    heap = [(-in_rem[v], -out_rem[v], rank[v], v) for v in range(n)]
    heapq.heapify(heap)

    order = sorted(range(n), key=lambda v: (-out_rem[v], rank[v]))
    edges: list[tuple[int, int]] = []
    for source in order:
        need = out_rem[source]
        if need == 0:
            continue
        taken: list[int] = []
        skipped: list[tuple[int, int, int, int]] = []
        while need and heap:
            entry = heapq.heappop(heap)
            neg_in, neg_out, _, v = entry
            if -neg_in != in_rem[v] or -neg_out != out_rem[v]:
                continue  # stale
            if v == source:
                skipped.append(entry)
                continue
            if in_rem[v] == 0:
                heapq.heappush(heap, entry)
                break
            # Decrement immediately so any duplicate entry for v goes stale;
            # the refreshed entry is pushed only after the step, keeping the
            # chosen targets distinct.
            in_rem[v] -= 1
            taken.append(v)
            need -= 1
        if need:
            raise NotGraphicalError(
                "degree sequence is not realizable as a simple digraph")
        for entry in skipped:
            heapq.heappush(heap, entry)
        out_rem[source] = 0
        for v in taken:
            edges.append((source, v))
            heapq.heappush(heap, (-in_rem[v], -out_rem[v], rank[v], v))
        # source's out-remainder changed; refresh its heap entry lazily
        heapq.heappush(heap, (-in_rem[source], 0, rank[source], source))
    return edges
