"""Graphicality test for degree-correlation targets.

A target is realizable by a simple digraph exactly when three conditions
hold on the bipartite side:

  I    the joint matrix is bipartite: no count between two same-side cells;
  II   for every pair with a positive count, count plus non-chords fits in
       the complete bipartite product of the two cells;
  III  row sums are consistent with the degree sequence: the edges incident
       to a cell, divided by its degree, must be an integer equal to the
       number of nodes the dds puts in that cell.

The check runs in time linear in the number of nonzero entries plus cells
and reports every violation, not just the first.  All arithmetic is exact
integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TargetStructureError
from .targets import CellKey, D2KTargets


@dataclass(frozen=True)
class Violation:
    condition: str                      # "I", "II" or "III"
    cells: tuple[CellKey, ...]
    message: str

    def to_json_dict(self) -> dict:
        return {
            "condition": self.condition,
            "cells": [{"side": c.side,
                       "label": list(c.label) if isinstance(c.label, tuple)
                       else c.label} for c in self.cells],
            "message": self.message,
        }


@dataclass
class RealizabilityReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def realizable(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        if self.realizable:
            return "realizable"
        lines = [f"not realizable ({len(self.violations)} violation(s)):"]
        lines += [f"  [{v.condition}] {v.message}" for v in self.violations]
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "realizable": self.realizable,
            "violations": [v.to_json_dict() for v in self.violations],
        }


def _validate_structure(t: D2KTargets) -> None:
    if t.n != len(t.dds):
        raise TargetStructureError("n does not match dds length")
    for (a, b), count in t.jdam.items():
        if count < 0:
            raise TargetStructureError(f"negative jdam count at ({a},{b})")
        if t.jdam.get((b, a)) != count:
            raise TargetStructureError(f"asymmetric jdam at ({a},{b})")
        if a.degree() == 0 or b.degree() == 0:
            raise TargetStructureError(
                f"zero-degree cell used as jdam key: ({a},{b})")


def check(t: D2KTargets) -> RealizabilityReport:
    """Decide whether t admits a simple directed realization.

    Structural malformation (asymmetric jdam, negative counts, zero-degree
    cells) raises TargetStructureError; graphicality violations are
    collected in the returned report.
    """
    _validate_structure(t)
    violations: list[Violation] = []

    # I: no same-side counts.
    for (a, b), count in sorted(t.jdam.items(),
                                key=lambda kv: (kv[0][0].sort_key(),
                                                kv[0][1].sort_key())):
        if count > 0 and a.side == b.side and a.sort_key() <= b.sort_key():
            violations.append(Violation(
                "I", (a, b),
                f"same-side cells {a} and {b} carry {count} edges"))

    # II: per positive pair, edges + non-chords fit the cell product.
    for a, b, count in t.jdam_entries():
        if a.side == b.side:
            continue
        size_a = t.cell_sizes.get(a, 0)
        size_b = t.cell_sizes.get(b, 0)
        forbidden = t.f.get((a, b), 0)
        if count + forbidden > size_a * size_b:
            violations.append(Violation(
                "II", (a, b),
                f"{count} edges + {forbidden} non-chords exceed "
                f"|{a}| * |{b}| = {size_a} * {size_b}"))

    # III: row sums against the dds, exact integer arithmetic.
    cells = set(t.cell_sizes)
    cells.update(c for pair in t.jdam for c in pair)
    row_sum: dict[CellKey, int] = {}
    for (a, _b), count in t.jdam.items():
        row_sum[a] = row_sum.get(a, 0) + count
    for cell in sorted(cells, key=CellKey.sort_key):
        degree = cell.degree()
        total = row_sum.get(cell, 0)
        expected = t.cell_sizes.get(cell, 0)
        if total % degree != 0:
            violations.append(Violation(
                "III", (cell,),
                f"edges incident to {cell} total {total}, not divisible by "
                f"degree {degree}"))
        elif total // degree != expected:
            violations.append(Violation(
                "III", (cell,),
                f"jdam implies {total // degree} nodes in {cell}, dds has "
                f"{expected}"))
    return RealizabilityReport(violations)
