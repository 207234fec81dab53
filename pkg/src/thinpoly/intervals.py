"""Maximal inner intervals, single cells, end-cells and the S-property."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .grid import Cell, is_polyomino, is_simple, is_thin

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True, eq=False)
class InnerInterval:
    """A straight run of cells, ordered by increasing coordinate.

    Two intervals are equal when they cover the same cells; the orientation
    of a one-cell interval is informational only.
    """

    orientation: str
    cells: tuple

    @property
    def cellset(self) -> frozenset:
        return frozenset(self.cells)

    def __eq__(self, other):
        if not isinstance(other, InnerInterval):
            return NotImplemented
        return self.cellset == other.cellset

    def __hash__(self):
        return hash(self.cellset)

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return cell in self.cellset

    def __iter__(self):
        return iter(self.cells)

    def key(self) -> tuple:
        return tuple(sorted(self.cells))

    def to_json_obj(self) -> dict:
        return {"orientation": self.orientation, "cells": [[c.x, c.y] for c in self.cells]}


def _runs(P: frozenset, horizontal: bool) -> list[InnerInterval]:
    runs = []
    for c in P:
        prev = Cell(c.x - 1, c.y) if horizontal else Cell(c.x, c.y - 1)
        if prev in P:
            continue
        cells = [c]
        while True:
            last = cells[-1]
            nxt = Cell(last.x + 1, last.y) if horizontal else Cell(last.x, last.y + 1)
            if nxt not in P:
                break
            cells.append(nxt)
        runs.append(InnerInterval(HORIZONTAL if horizontal else VERTICAL, tuple(cells)))
    return runs


def maximal_inner_intervals(P) -> list[InnerInterval]:
    """All maximal runs not strictly contained in a longer perpendicular run.

    Returned in canonical order (sorted cell lists).
    """
    P = frozenset(P)
    if not is_polyomino(P):
        raise DomainError("maximal_inner_intervals requires a polyomino")
    horiz = _runs(P, True)
    vert = _runs(P, False)
    # a run of length 1 is contained in the perpendicular run through it
    # unless that run also has length 1 (an isolated cell)
    long_h = {c for r in horiz if len(r) > 1 for c in r.cells}
    long_v = {c for r in vert if len(r) > 1 for c in r.cells}
    out = [r for r in horiz if len(r) > 1 or r.cells[0] not in long_v]
    out += [r for r in vert if len(r) > 1]
    out += [
        InnerInterval(HORIZONTAL, r.cells)
        for r in vert
        if len(r) == 1 and r.cells[0] not in long_h and r not in out
    ]
    out.sort(key=InnerInterval.key)
    return out


def interval_index(P) -> dict:
    """Map each cell to the list of maximal inner intervals containing it."""
    index = {c: [] for c in P}
    for iv in maximal_inner_intervals(P):
        for c in iv.cells:
            index[c].append(iv)
    return index


def intervals_containing(P, C: Cell) -> list[InnerInterval]:
    P = frozenset(P)
    if C not in P:
        raise DomainError(f"cell {tuple(C)} is not in the cell set")
    return [iv for iv in maximal_inner_intervals(P) if C in iv]


def single_cells(P) -> set:
    """Cells lying in exactly one maximal inner interval."""
    return {c for c, ivs in interval_index(frozenset(P)).items() if len(ivs) == 1}


def end_cells(I: InnerInterval) -> set:
    if not I.cells:
        raise DomainError("empty interval")
    return {I.cells[0], I.cells[-1]}


def require_simple_thin(P: frozenset, what: str) -> None:
    if not is_polyomino(P) or not is_simple(P) or not is_thin(P):
        raise DomainError(f"{what} requires a simple thin polyomino")


def has_s_property(P) -> bool:
    """Every maximal inner interval holds exactly one single cell."""
    P = frozenset(P)
    require_simple_thin(P, "has_s_property")
    index = interval_index(P)
    singles = {c for c, ivs in index.items() if len(ivs) == 1}
    return all(
        sum(1 for c in iv.cells if c in singles) == 1 for iv in maximal_inner_intervals(P)
    )
