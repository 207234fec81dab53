from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from thinpoly.grid import Cell, normalize, parse_ascii

settings.register_profile("default", max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = {
    "single": "#",
    "domino": "##",
    "L": "#.\n##",
    "U": "#.#\n###",
    "square": "##\n##",
    "ring": "###\n#.#\n###",
    "comb": "#.#.\n####\n.#..",
    "glued": "##.\n.#.\n###\n#..",
    "cd_zero_even": ".#..\n####\n#.#.",
    "depth1": "##..\n.#..\n####\n#.#.",
}


@pytest.fixture
def shapes():
    return {k: parse_ascii(v) for k, v in FIXTURES.items()}


@st.composite
def polyominoes(draw, max_cells=8, thin=False):
    """Connected cell sets grown one neighbour at a time from the origin."""
    n = draw(st.integers(1, max_cells))
    cells = {Cell(0, 0)}
    while len(cells) < n:
        frontier = sorted(
            {Cell(c.x + dx, c.y + dy) for c in cells for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))} - cells
        )
        if thin:
            frontier = [f for f in frontier if not _closes_square(cells, f)]
        if not frontier:
            break
        cells.add(draw(st.sampled_from(frontier)))
    return normalize(cells)


def _closes_square(cells, f):
    for dx in (0, -1):
        for dy in (0, -1):
            block = {Cell(f.x + dx + i, f.y + dy + j) for i in (0, 1) for j in (0, 1)}
            if block - {f} <= cells:
                return True
    return False


def brute_attacks(P, a, b):
    if a.y == b.y:
        lo, hi = sorted((a.x, b.x))
        return all(Cell(x, a.y) in P for x in range(lo, hi + 1))
    if a.x == b.x:
        lo, hi = sorted((a.y, b.y))
        return all(Cell(a.x, y) in P for y in range(lo, hi + 1))
    return False


def brute_rook(P, forbidden=frozenset()):
    """Coefficient list by checking every subset; fine up to ~12 cells."""
    pool = sorted(set(P) - set(forbidden))
    out = [1]
    for k in range(1, len(pool) + 1):
        n = sum(
            1
            for sub in combinations(pool, k)
            if not any(brute_attacks(P, a, b) for a, b in combinations(sub, 2))
        )
        if n == 0:
            break
        out.append(n)
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
