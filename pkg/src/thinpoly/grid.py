"""Cell-level geometry: parsing, adjacency, connectivity, holes, thinness, paths.

A cell is named by its lower-left corner ``(x, y)`` and occupies the unit
square ``[x, x+1] x [y, y+1]``.  A cell set is a ``frozenset`` of cells; all
functions here are pure and never mutate their arguments.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, NamedTuple

from .errors import DomainError, ParseError


class Cell(NamedTuple):
    x: int
    y: int


class Vertex(NamedTuple):
    x: int
    y: int


CellSet = frozenset  # frozenset[Cell]

STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def as_cellset(cells: Iterable) -> frozenset:
    return frozenset(Cell(int(c[0]), int(c[1])) for c in cells)


def sorted_cells(P: Iterable[Cell]) -> list[Cell]:
    """Cells in the global canonical order (lexicographic on ``(x, y)``)."""
    return sorted(P)


def canonical_key(P: Iterable[Cell]) -> tuple:
    return tuple(sorted(P))


def translate(P: Iterable[Cell], dx: int, dy: int) -> frozenset:
    return frozenset(Cell(c.x + dx, c.y + dy) for c in P)


def normalize(P: Iterable[Cell]) -> frozenset:
    """Translate so the minimum x and minimum y over the cells are both 0."""
    P = frozenset(P)
    if not P:
        return P
    mx = min(c.x for c in P)
    my = min(c.y for c in P)
    if mx == 0 and my == 0:
        return P
    return translate(P, -mx, -my)


def symmetries(P: Iterable[Cell]) -> list[frozenset]:
    """The images of ``P`` under the 8 symmetries of the square, normalized."""
    P = list(P)
    maps = (
        lambda x, y: (x, y),
        lambda x, y: (-y, x),
        lambda x, y: (-x, -y),
        lambda x, y: (y, -x),
        lambda x, y: (-x, y),
        lambda x, y: (x, -y),
        lambda x, y: (y, x),
        lambda x, y: (-y, -x),
    )
    return [normalize(Cell(*f(c.x, c.y)) for c in P) for f in maps]


# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------

def parse_ascii(text: str) -> frozenset:
    """Parse a ``#``/``.`` grid; the first line is the top row.

    Trailing blank lines are ignored.  Returns the normalized cell set.
    """
    lines = text.splitlines()
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty grid text")
    n = len(lines)
    cells = []
    for i, line in enumerate(lines):
        y = n - 1 - i
        for j, ch in enumerate(line):
            if ch == "#":
                cells.append(Cell(j, y))
            elif ch != ".":
                raise ParseError(f"illegal character {ch!r}", line=i + 1, column=j + 1)
    if not cells:
        raise ParseError("grid contains no '#' cells", line=n)
    return normalize(cells)


def to_ascii(P: Iterable[Cell]) -> str:
    """Render the normalized form of ``P`` as a grid (no trailing newline)."""
    P = normalize(P)
    if not P:
        raise DomainError("cannot render an empty cell set")
    w = max(c.x for c in P) + 1
    h = max(c.y for c in P) + 1
    rows = []
    for y in range(h - 1, -1, -1):
        rows.append("".join("#" if Cell(x, y) in P else "." for x in range(w)))
    return "\n".join(rows)


def parse_json(text_or_obj) -> frozenset:
    """Parse ``{"cells": [[x, y], ...]}``.  Coordinates are kept as given."""
    obj = text_or_obj
    if isinstance(text_or_obj, str):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(obj, dict) or not isinstance(obj.get("cells"), list):
        raise ParseError('expected an object with a "cells" list')
    seen = set()
    for k, item in enumerate(obj["cells"]):
        ok = (
            isinstance(item, list)
            and len(item) == 2
            and all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        )
        if not ok:
            raise ParseError(f"cells[{k}] is not an integer pair")
        c = Cell(item[0], item[1])
        if c in seen:
            raise ParseError(f"duplicate cell {tuple(c)} at cells[{k}]")
        seen.add(c)
    return frozenset(seen)


def to_json_obj(P: Iterable[Cell]) -> dict:
    return {"cells": [[c.x, c.y] for c in sorted(P)]}


def load_cells(text: str) -> frozenset:
    """Parse either input format, detected from the first non-blank character."""
    if text.lstrip().startswith("{"):
        return normalize(parse_json(text))
    return parse_ascii(text)


# ---------------------------------------------------------------------------
# Adjacency and connectivity
# ---------------------------------------------------------------------------

def _require_member(P, *cells):
    for c in cells:
        if c not in P:
            raise DomainError(f"cell {tuple(c)} is not in the cell set")


def neighbours(P: frozenset, C: Cell) -> set:
    """Cells of ``P`` sharing a full edge with ``C``."""
    _require_member(P, C)
    return {Cell(C.x + dx, C.y + dy) for dx, dy in STEPS if (C.x + dx, C.y + dy) in P}


def _flood(P: frozenset, start: Cell) -> set:
    seen = {start}
    todo = [start]
    while todo:
        c = todo.pop()
        for dx, dy in STEPS:
            d = Cell(c.x + dx, c.y + dy)
            if d in P and d not in seen:
                seen.add(d)
                todo.append(d)
    return seen


def components(P: Iterable[Cell]) -> list[frozenset]:
    """Edge-connected components, ordered by their sorted cell lists."""
    rest = set(P)
    frozen = frozenset(rest)
    parts = []
    while rest:
        comp = _flood(frozen, min(rest))
        rest -= comp
        parts.append(frozenset(comp))
    parts.sort(key=canonical_key)
    return parts


def is_connected(P: frozenset) -> bool:
    return bool(P) and len(_flood(P, next(iter(P)))) == len(P)


def is_polyomino(P: Iterable[Cell]) -> bool:
    """Non-empty and edge-connected.

    For a union of closed unit squares, having no finite cut-set is the same
    as edge-connectivity: corner-only contact is cut by the shared point.
    """
    return is_connected(frozenset(P))


def is_simple(P: Iterable[Cell]) -> bool:
    """True iff the polyomino has no holes.

    Empty grid cells are flood-filled (4-connected) from the outer ring of
    the bounding box grown by one; any empty cell not reached is a hole.
    """
    P = frozenset(P)
    if not is_polyomino(P):
        raise DomainError("is_simple requires a polyomino")
    x0 = min(c.x for c in P) - 1
    x1 = max(c.x for c in P) + 1
    y0 = min(c.y for c in P) - 1
    y1 = max(c.y for c in P) + 1
    total = (x1 - x0 + 1) * (y1 - y0 + 1) - len(P)
    start = (x0, y0)
    seen = {start}
    todo = [start]
    while todo:
        x, y = todo.pop()
        for dx, dy in STEPS:
            nx, ny = x + dx, y + dy
            if x0 <= nx <= x1 and y0 <= ny <= y1 and (nx, ny) not in seen and (nx, ny) not in P:
                seen.add((nx, ny))
                todo.append((nx, ny))
    return len(seen) == total


def is_thin(P: Iterable[Cell]) -> bool:
    """True iff no 2x2 block of cells is contained in ``P``."""
    P = frozenset(P)
    for c in P:
        if (c.x + 1, c.y) in P and (c.x, c.y + 1) in P and (c.x + 1, c.y + 1) in P:
            return False
    return True


def path(P: Iterable[Cell], C: Cell, D: Cell) -> list[Cell]:
    """A shortest neighbour path from ``C`` to ``D``.

    For simple thin polyominoes this is the unique path.  Ties between
    shortest paths are broken by canonical neighbour order.
    """
    P = frozenset(P)
    _require_member(P, C, D)
    prev = {C: None}
    queue = deque([C])
    while queue:
        c = queue.popleft()
        if c == D:
            break
        for d in sorted(Cell(c.x + dx, c.y + dy) for dx, dy in STEPS):
            if d in P and d not in prev:
                prev[d] = c
                queue.append(d)
    if D not in prev:
        raise DomainError(f"no path from {tuple(C)} to {tuple(D)}")
    out = [D]
    while out[-1] != C:
        out.append(prev[out[-1]])
    out.reverse()
    return out


def cells_beyond(P: frozenset, gate: Cell, start: Cell) -> frozenset:
    """Cells whose path to ``start`` avoids ``gate``.

    In a simple thin polyomino paths are unique, so this is the component of
    ``P - {gate}`` containing ``start``.
    """
    _require_member(P, gate, start)
    if gate == start:
        return frozenset()
    return frozenset(_flood(P - {gate}, start))


def vertices(P: Iterable[Cell]) -> set:
    """All lattice corners of the cells of ``P``."""
    out = set()
    for c in P:
        out.update(
            (Vertex(c.x, c.y), Vertex(c.x + 1, c.y), Vertex(c.x, c.y + 1), Vertex(c.x + 1, c.y + 1))
        )
    return out
