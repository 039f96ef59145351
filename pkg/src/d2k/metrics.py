"""Graph measurements used to compare generated graphs against originals.

Everything here is read-only over an immutable digraph and deterministic
for a fixed configuration and seed.  Heavy computations (all-source BFS,
betweenness, eigenvalues) switch to seeded sampling or iterative solvers
above configurable size thresholds, with the switch recorded in the
report metadata.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import DirectedGraph
from .targets import extract_d2k, extract_uman

# ---------------------------------------------------------------------------
# dyad and triad censuses

TRIAD_NAMES = ("003", "012", "102", "021D", "021U", "021C", "111D", "111U",
               "030T", "030C", "201", "120D", "120U", "120C", "210", "300")

# Batagelj/Mrvar code table: the 6 possible arcs of a triple, read as bits,
# map to one of the 16 isomorphism classes.
_TRICODES = (1, 2, 2, 3, 2, 4, 6, 8, 2, 6, 5, 7, 3, 8, 7, 11, 2, 6, 4, 8, 5,
             9, 9, 13, 6, 10, 9, 14, 7, 14, 12, 15, 2, 5, 6, 7, 6, 9, 10, 14,
             4, 9, 9, 12, 8, 13, 14, 15, 3, 7, 8, 11, 7, 12, 14, 15, 8, 14,
             13, 15, 11, 15, 15, 16)
_CODE_TO_NAME = {i: TRIAD_NAMES[code - 1] for i, code in enumerate(_TRICODES)}


def dyad_census(g: DirectedGraph) -> dict[str, int]:
    t = extract_uman(g)
    return {"mutual": t.mutual, "asymmetric": t.asymmetric, "null": t.null}


def triad_census(g: DirectedGraph) -> dict[str, int]:
    """Counts of the 16 directed triad classes.

    Subquadratic scan over connected pairs; disconnected classes ("003" and
    the one-dyad classes) come out arithmetically rather than by cubic
    enumeration.
    """
    n = g.n
    census = dict.fromkeys(TRIAD_NAMES, 0)
    nbrs = [set(g.out_adj[v]) | set(g.in_adj[v]) for v in range(n)]
    has = g.has_edge
    for v in range(n):
        for u in nbrs[v]:
            if u <= v:
                continue
            third = (nbrs[v] | nbrs[u]) - {u, v}
            if has(v, u) and has(u, v):
                census["102"] += n - len(third) - 2
            else:
                census["012"] += n - len(third) - 2
            for w in third:
                if u < w or (v < w < u and w not in nbrs[v]):
                    code = ((1 if has(v, u) else 0) | (2 if has(u, v) else 0)
                            | (4 if has(v, w) else 0) | (8 if has(w, v) else 0)
                            | (16 if has(u, w) else 0) | (32 if has(w, u) else 0))
                    census[_CODE_TO_NAME[code]] += 1
    census["003"] = n * (n - 1) * (n - 2) // 6 - sum(census.values())
    return census


# ---------------------------------------------------------------------------
# dyad-wise shared partners, expansion, neighbor degrees

DSP_VARIANTS = ("independent_two_paths", "outgoing", "incoming")


def dsp(g: DirectedGraph, variant: str) -> dict[int, int]:
    """Histogram over ordered node pairs of their shared-partner count.

    independent_two_paths: partners w with i->w->j; outgoing: shared
    out-neighbors (i->w and j->w); incoming: shared in-neighbors.  The
    zero bin is included and computed arithmetically.
    """
    if variant not in DSP_VARIANTS:
        raise ValueError(f"unknown dsp variant {variant!r}")
    n = g.n
    counts: dict[tuple[int, int], int] = {}
    if variant == "independent_two_paths":
        groups = ((g.in_adj[w], g.out_adj[w]) for w in range(n))
    elif variant == "outgoing":
        groups = ((g.in_adj[w], g.in_adj[w]) for w in range(n))
    else:
        groups = ((g.out_adj[w], g.out_adj[w]) for w in range(n))
    for left, right in groups:
        for i in left:
            for j in right:
                if i != j:
                    key = (i, j)
                    counts[key] = counts.get(key, 0) + 1
    hist: dict[int, int] = {}
    for c in counts.values():
        hist[c] = hist.get(c, 0) + 1
    zero = n * (n - 1) - len(counts)
    if zero:
        hist[0] = zero
    return hist


def expansion(g: DirectedGraph, direction: str) -> list[float]:
    """Per-node ratio |second hop| / |first hop|, nodes with no first hop
    omitted.  The second hop is the set at exact directed distance 2: it
    excludes the origin and every first-hop node, so mutual edges and
    edges inside the first hop never inflate it.
    """
    if direction == "out":
        adj = g.out_adj
    elif direction == "in":
        adj = g.in_adj
    else:
        raise ValueError(f"unknown direction {direction!r}")
    ratios: list[float] = []
    for v in range(g.n):
        first = adj[v]
        if not first:
            continue
        h1 = set(first)
        h2: set[int] = set()
        for u in first:
            h2.update(adj[u])
        h2.discard(v)
        h2 -= h1
        ratios.append(len(h2) / len(h1))
    return ratios


def avg_neighbor_degree(g: DirectedGraph, node_side: str,
                        neighbor_side: str) -> dict[int, Fraction]:
    """Mean neighbor degree per degree value, as exact rationals.

    node_side "out" groups edges by the source's out-degree (the neighbor
    is the target); node_side "in" groups by the target's in-degree (the
    neighbor is the source).  neighbor_side picks which degree of the
    neighbor is averaged.
    """
    if node_side not in ("in", "out") or neighbor_side not in ("in", "out"):
        raise ValueError("sides must be 'in' or 'out'")
    sums: dict[int, int] = {}
    cnts: dict[int, int] = {}
    for u, v in g.edges():
        if node_side == "out":
            key, nb = g.out_degree(u), v
        else:
            key, nb = g.in_degree(v), u
        val = g.out_degree(nb) if neighbor_side == "out" else g.in_degree(nb)
        sums[key] = sums.get(key, 0) + val
        cnts[key] = cnts.get(key, 0) + 1
    return {k: Fraction(sums[k], cnts[k]) for k in sums}


NEIGHBOR_DEGREE_COMBOS = (("out", "in"), ("out", "out"), ("in", "in"),
                          ("in", "out"))


def degree_histogram(g: DirectedGraph, side: str) -> dict[int, int]:
    hist: dict[int, int] = {}
    for v in range(g.n):
        d = g.in_degree(v) if side == "in" else g.out_degree(v)
        hist[d] = hist.get(d, 0) + 1
    return hist


# ---------------------------------------------------------------------------
# paths, components, cores, betweenness, spectrum

def _bfs_distances(adj: list[list[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def shortest_path_histogram(g: DirectedGraph, sample_sources: int = 100,
                            exact_nodes: int = 1000,
                            seed: int = 1) -> tuple[dict[int, int], dict]:
    """Histogram of finite shortest-path lengths over ordered pairs.

    All sources when n <= exact_nodes, otherwise a seeded source sample.
    """
    n = g.n
    if n <= exact_nodes:
        sources = range(n)
        sampled = False
    else:
        rng = random.Random(seed)
        sources = rng.sample(range(n), min(sample_sources, n))
        sampled = True
    hist: dict[int, int] = {}
    for s in sources:
        for d in _bfs_distances(g.out_adj, s).values():
            if d > 0:
                hist[d] = hist.get(d, 0) + 1
    meta = {"sampled": sampled, "sources": len(list(sources)), "seed": seed}
    return hist, meta


def strongly_connected_components(g: DirectedGraph) -> list[list[int]]:
    """Kosaraju's algorithm, iterative on both passes."""
    n = g.n
    visited = [False] * n
    order: list[int] = []
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        stack: list[tuple[int, int]] = [(root, 0)]
        while stack:
            v, i = stack[-1]
            if i < len(g.out_adj[v]):
                stack[-1] = (v, i + 1)
                w = g.out_adj[v][i]
                if not visited[w]:
                    visited[w] = True
                    stack.append((w, 0))
            else:
                stack.pop()
                order.append(v)
    comp = [-1] * n
    components: list[list[int]] = []
    for root in reversed(order):
        if comp[root] != -1:
            continue
        members = [root]
        comp[root] = len(components)
        queue = [root]
        while queue:
            v = queue.pop()
            for w in g.in_adj[v]:
                if comp[w] == -1:
                    comp[w] = len(components)
                    members.append(w)
                    queue.append(w)
        components.append(members)
    return components


def scc_size_histogram(g: DirectedGraph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for members in strongly_connected_components(g):
        hist[len(members)] = hist.get(len(members), 0) + 1
    return hist


def core_numbers(g: DirectedGraph) -> list[int]:
    """Core index per node on the symmetrized simple graph (the directed
    k-core is not uniquely defined; symmetrization is the conventional
    reading and is recorded in report metadata)."""
    n = g.n
    und: list[set[int]] = [set() for _ in range(n)]
    for u, v in g.edges():
        und[u].add(v)
        und[v].add(u)
    deg = [len(und[v]) for v in range(n)]
    if n == 0:
        return []
    max_deg = max(deg)
    bins = [0] * (max_deg + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(max_deg + 1):
        bins[d], start = start, start + bins[d]
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    core = list(deg)
    for i in range(n):
        v = vert[i]
        for u in und[v]:
            if core[u] > core[v]:
                du = core[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bins[du] += 1
                core[u] -= 1
    return core


def core_number_histogram(g: DirectedGraph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for c in core_numbers(g):
        hist[c] = hist.get(c, 0) + 1
    return hist


def betweenness_values(g: DirectedGraph, exact_nodes: int = 500,
                       pivots: int = 100, seed: int = 1,
                       normalized: bool = True) -> tuple[list[float], dict]:
    """Directed shortest-path betweenness per node (Brandes accumulation).

    Exact below the node threshold, otherwise estimated from a seeded
    pivot sample scaled by n / #pivots.
    """
    n = g.n
    if n <= exact_nodes:
        sources = range(n)
        exact = True
        scale = 1.0
    else:
        rng = random.Random(seed)
        sources = rng.sample(range(n), min(pivots, n))
        exact = False
        scale = n / len(sources)
    bc = [0.0] * n
    for s in sources:
        sigma = [0] * n
        dist = [-1] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma[s] = 1
        dist[s] = 0
        stack: list[int] = []
        frontier = [s]
        d = 0
        while frontier:
            stack.extend(frontier)
            nxt = []
            d += 1
            for v in frontier:
                for w in g.out_adj[v]:
                    if dist[w] == -1:
                        dist[w] = d
                        nxt.append(w)
                    if dist[w] == d:
                        sigma[w] += sigma[v]
                        preds[w].append(v)
            frontier = nxt
        delta = [0.0] * n
        for w in reversed(stack):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w] * scale
    if normalized and n > 2:
        norm = (n - 1) * (n - 2)
        bc = [x / norm for x in bc]
    meta = {"exact": exact, "sources": len(list(sources)),
            "normalized": normalized, "seed": seed}
    return bc, meta


def top_eigenvalues(g: DirectedGraph, k: int = 20, operator: str = "directed",
                    dense_nodes: int = 2000,
                    seed: int = 1) -> tuple[list[float], dict]:
    """Magnitudes of the k largest-magnitude adjacency eigenvalues.

    Dense solver up to dense_nodes, iterative Krylov (seeded start vector,
    hence deterministic) above.
    """
    n = g.n
    k = min(k, n)
    if n == 0 or k == 0:
        return [], {"method": "none", "operator": operator, "k": 0}
    symmetrize = operator == "symmetrized"
    if operator not in ("directed", "symmetrized"):
        raise ValueError(f"unknown eigenvalue operator {operator!r}")
    if n <= dense_nodes or g.m == 0 or k >= n - 1:
        a = np.zeros((n, n))
        for u, v in g.edges():
            a[u, v] = 1.0
            if symmetrize:
                a[v, u] = 1.0
        vals = np.linalg.eigvalsh(a) if symmetrize else np.linalg.eigvals(a)
        mags = sorted((float(abs(x)) for x in vals), reverse=True)[:k]
        return mags, {"method": "dense", "operator": operator, "k": k}
    import scipy.sparse
    import scipy.sparse.linalg
    rows, cols = [], []
    for u, v in g.edges():
        rows.append(u)
        cols.append(v)
        if symmetrize:
            rows.append(v)
            cols.append(u)
    data = np.ones(len(rows))
    a = scipy.sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    if symmetrize:
        a.sum_duplicates()
        a.data[:] = 1.0
    v0 = np.random.default_rng(seed).standard_normal(n)
    vals = scipy.sparse.linalg.eigs(a, k=k, which="LM", v0=v0,
                                    return_eigenvectors=False)
    mags = sorted((float(abs(x)) for x in vals), reverse=True)
    return mags, {"method": "arpack", "operator": operator, "k": k}


# ---------------------------------------------------------------------------
# the assembled report

METRIC_NAMES = ("degrees", "neighbor_degrees", "degree_correlation",
                "dyad_census", "triad_census", "paths", "scc", "kcore",
                "betweenness", "eigenvalues", "dsp", "expansion")


@dataclass
class MetricsConfig:
    metrics: tuple[str, ...] = ("all",)
    seed: int = 1
    sample_sources: int = 100
    path_exact_nodes: int = 1000
    betweenness_exact_nodes: int = 500
    eigen_k: int = 20
    eigen_dense_nodes: int = 2000
    eigen_operator: str = "directed"

    def selected(self) -> tuple[str, ...]:
        if "all" in self.metrics:
            return METRIC_NAMES
        unknown = [m for m in self.metrics if m not in METRIC_NAMES]
        if unknown:
            raise ValueError(f"unknown metric name(s): {', '.join(unknown)}")
        return tuple(m for m in METRIC_NAMES if m in self.metrics)

    def to_json_dict(self) -> dict:
        return {
            "metrics": list(self.selected()),
            "seed": self.seed,
            "sample_sources": self.sample_sources,
            "path_exact_nodes": self.path_exact_nodes,
            "betweenness_exact_nodes": self.betweenness_exact_nodes,
            "eigen_k": self.eigen_k,
            "eigen_dense_nodes": self.eigen_dense_nodes,
            "eigen_operator": self.eigen_operator,
        }


_ASSUMPTIONS = {
    "kcore": "computed on the symmetrized simple graph",
    "expansion": "second hop excludes the origin and all first-hop nodes",
}


@dataclass
class CensusReport:
    """All measurements of one graph; fields are None when not requested."""

    n: int
    m: int
    config: MetricsConfig
    degree_hist_in: dict[int, int] | None = None
    degree_hist_out: dict[int, int] | None = None
    neighbor_degree: dict[str, dict[int, float]] | None = None
    degree_correlation: dict[str, int] | None = None
    dyads: dict[str, int] | None = None
    triads: dict[str, int] | None = None
    path_hist: dict[int, int] | None = None
    path_meta: dict | None = None
    scc_hist: dict[int, int] | None = None
    kcore_hist: dict[int, int] | None = None
    betweenness: list[float] | None = None
    betweenness_meta: dict | None = None
    eigenvalues: list[float] | None = None
    eigen_meta: dict | None = None
    dsp: dict[str, dict[int, int]] | None = None
    expansion: dict[str, list[float]] | None = None
    notes: dict[str, str] = field(default_factory=dict)


def structural_suite(g: DirectedGraph, config: MetricsConfig | None = None) \
        -> CensusReport:
    """Compute the selected metrics of g into one report."""
    config = config or MetricsConfig()
    wanted = set(config.selected())
    report = CensusReport(n=g.n, m=g.m, config=config)
    if "degrees" in wanted:
        report.degree_hist_in = degree_histogram(g, "in")
        report.degree_hist_out = degree_histogram(g, "out")
    if "neighbor_degrees" in wanted:
        report.neighbor_degree = {
            f"{a}_{b}": {k: float(v) for k, v in
                         avg_neighbor_degree(g, a, b).items()}
            for a, b in NEIGHBOR_DEGREE_COMBOS}
    if "degree_correlation" in wanted:
        t = extract_d2k(g)
        report.degree_correlation = {
            _cell_pair_label(a, b): count for a, b, count in t.jdam_entries()}
    if "dyad_census" in wanted:
        report.dyads = dyad_census(g)
    if "triad_census" in wanted:
        report.triads = triad_census(g)
    if "paths" in wanted:
        report.path_hist, report.path_meta = shortest_path_histogram(
            g, config.sample_sources, config.path_exact_nodes, config.seed)
    if "scc" in wanted:
        report.scc_hist = scc_size_histogram(g)
    if "kcore" in wanted:
        report.kcore_hist = core_number_histogram(g)
        report.notes["kcore"] = _ASSUMPTIONS["kcore"]
    if "betweenness" in wanted:
        report.betweenness, report.betweenness_meta = betweenness_values(
            g, config.betweenness_exact_nodes, config.sample_sources,
            config.seed)
    if "eigenvalues" in wanted:
        report.eigenvalues, report.eigen_meta = top_eigenvalues(
            g, config.eigen_k, config.eigen_operator,
            config.eigen_dense_nodes, config.seed)
    if "dsp" in wanted:
        report.dsp = {variant: dsp(g, variant) for variant in DSP_VARIANTS}
    if "expansion" in wanted:
        report.expansion = {"out": expansion(g, "out"),
                            "in": expansion(g, "in")}
        report.notes["expansion"] = _ASSUMPTIONS["expansion"]
    return report


def _cell_pair_label(a, b) -> str:
    def one(c):
        label = c.label if not isinstance(c.label, tuple) \
            else ",".join(map(str, c.label))
        return f"{c.side}:{label}"
    return f"{one(a)}|{one(b)}"
