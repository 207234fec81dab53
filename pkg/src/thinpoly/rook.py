"""Rook configurations and rook polynomials.

Two cells attack each other when they lie in a common inner interval: same
row or column with every cell in between present.  Restricted counts keep the
attack relation of the full ambient set, so two permitted cells may attack
through a forbidden one.
"""

from __future__ import annotations

from typing import Iterator

from .errors import DomainError
from .grid import Cell, is_polyomino
from .poly import IntPolynomial


def _require_members(P, cells):
    for c in cells:
        if c not in P:
            raise DomainError(f"cell {tuple(c)} is not in the cell set")


def attacks(P, c1: Cell, c2: Cell) -> bool:
    P = frozenset(P)
    _require_members(P, (c1, c2))
    if c1 == c2:
        return False
    if c1.y == c2.y:
        lo, hi = sorted((c1.x, c2.x))
        return all(Cell(x, c1.y) in P for x in range(lo + 1, hi))
    if c1.x == c2.x:
        lo, hi = sorted((c1.y, c2.y))
        return all(Cell(c1.x, y) in P for y in range(lo + 1, hi))
    return False


def _attack_masks(order: list) -> list[int]:
    """Bitmask of attacked cells for each cell, indexed like ``order``."""
    index = {c: i for i, c in enumerate(order)}
    masks = [0] * len(order)
    for i, c in enumerate(order):
        m = 0
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            x, y = c.x + dx, c.y + dy
            while (x, y) in index:
                m |= 1 << index[(x, y)]
                x += dx
                y += dy
        masks[i] = m
    return masks


def _count(masks: list[int], allowed: int) -> list[int]:
    """Counts of non-attacking subsets of ``allowed``, by size."""
    counts = [0] * (len(masks) + 1)

    def go(free: int, k: int) -> None:
        counts[k] += 1
        while free:
            low = free & -free
            i = low.bit_length() - 1
            free ^= low
            # only cells after i remain candidates, so each subset is visited once
            go(free & ~masks[i], k + 1)

    go(allowed, 0)
    return counts


def restricted_rook_polynomial(P, forbidden=()) -> IntPolynomial:
    """Configurations of ``P`` with no rook on a forbidden cell."""
    P = frozenset(P)
    forbidden = frozenset(forbidden)
    if not forbidden <= P:
        raise DomainError("forbidden cells must be a subset of the cell set")
    order = sorted(P)
    masks = _attack_masks(order)
    allowed = 0
    for i, c in enumerate(order):
        if c not in forbidden:
            allowed |= 1 << i
    return IntPolynomial(_count(masks, allowed))


def rook_polynomial(P) -> IntPolynomial:
    return restricted_rook_polynomial(P, ())


def rook_number(P) -> int:
    P = frozenset(P)
    if not P:
        return 0
    return rook_polynomial(P).degree


def rook_configurations(P) -> Iterator[frozenset]:
    """Every non-attacking subset of ``P``, in canonical depth-first order."""
    P = frozenset(P)
    order = sorted(P)
    masks = _attack_masks(order)

    def go(free: int, chosen: tuple):
        yield frozenset(chosen)
        while free:
            low = free & -free
            i = low.bit_length() - 1
            free ^= low
            yield from go(free & ~masks[i], chosen + (order[i],))

    yield from go((1 << len(order)) - 1, ())


def rook_polynomial_through(P, C: Cell) -> IntPolynomial:
    """Configurations of ``P`` that place a rook on ``C``."""
    P = frozenset(P)
    _require_members(P, (C,))
    counts = [0] * (len(P) + 1)
    for conf in rook_configurations(P):
        if C in conf:
            counts[len(conf)] += 1
    return IntPolynomial(counts)


def max_rook_configs(P) -> list[frozenset]:
    P = frozenset(P)
    if not is_polyomino(P):
        raise DomainError("max_rook_configs requires a polyomino")
    confs = list(rook_configurations(P))
    top = max(len(c) for c in confs)
    return sorted((c for c in confs if len(c) == top), key=lambda c: tuple(sorted(c)))
