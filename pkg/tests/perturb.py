"""Perturbed-target generator for cross-validating the realizability check
against exhaustive enumeration on tiny node counts."""
from __future__ import annotations

import random

from conftest import all_digraphs
from d2k import D2KTargets, extract_d2k


def canonical_target_key(t: D2KTargets):
    return (t.mode, t.n, tuple(sorted(t.dds)), tuple(t.jdam_entries()))


def perturbed_targets(rng: random.Random, rounds: int, n: int = 3,
                      base_graphs=None):
    """Yield structurally well-formed targets, a mix of realizable and not.

    Starts from targets extracted from random digraphs on n nodes and
    applies 0..3 random +-1 edits to jdam entries; half the edits are
    rebalanced against another entry of the same row so some perturbations
    keep marginals intact.
    """
    if base_graphs is None:
        base_graphs = list(all_digraphs(n))
    for _ in range(rounds):
        g = base_graphs[rng.randrange(len(base_graphs))]
        t = extract_d2k(g)
        entries = {(a, b): c for a, b, c in t.jdam_entries()}
        cells = sorted({c for pair in entries for c in pair},
                       key=lambda c: c.sort_key())
        for _edit in range(rng.randint(0, 3)):
            if not entries:
                break
            keys = sorted(entries, key=lambda kv: (kv[0].sort_key(),
                                                   kv[1].sort_key()))
            a, b = keys[rng.randrange(len(keys))]
            delta = rng.choice((-1, 1))
            entries[(a, b)] = max(0, entries[(a, b)] + delta)
            if rng.random() < 0.5 and len(keys) > 1:
                # compensate on another entry sharing the row of a
                partners = [k for k in keys if k[0] == a and k != (a, b)]
                if partners:
                    pa, pb = partners[rng.randrange(len(partners))]
                    entries[(pa, pb)] = max(0, entries[(pa, pb)] - delta)
            entries = {k: v for k, v in entries.items() if v > 0}
        jdam = {}
        for (a, b), count in entries.items():
            jdam[(a, b)] = count
            jdam[(b, a)] = count
        yield D2KTargets.from_dds_jdam(t.mode, t.dds, jdam)
