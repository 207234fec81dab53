"""Independent check of ``h = r`` from the binomial ideal of a polyomino.

The degree-d piece of the ideal is spanned by ``m * g`` for monomials ``m`` of
degree ``d - 2`` and generators ``g``.  Its dimension is a matrix rank, taken
modulo two primes (which must agree) or by fraction-free integer elimination.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import TextIO

from .errors import DomainError, InconsistencyError, ResourceError
from .grid import Cell, Vertex, is_polyomino, is_simple, is_thin, vertices
from .poly import IntPolynomial
from .rook import rook_polynomial

PRIMES = (2_147_483_647, 2_305_843_009_213_693_951)
DEFAULT_BUDGET = 250_000
BUDGET_ENV = "THINPOLY_ORACLE_BUDGET"


def budget_from_env() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class BinomialGenerator:
    """``x[a] x[b] - x[c] x[e]`` as two sorted vertex pairs."""

    plus: tuple
    minus: tuple


@dataclass(frozen=True)
class HilbertProfile:
    H: tuple
    krull_dim: int
    h: IntPolynomial

    def to_json_obj(self) -> dict:
        return {"H": list(self.H), "krull_dim": self.krull_dim, "h": self.h.to_json_obj(), "h_text": str(self.h)}


def generators(P) -> list[BinomialGenerator]:
    """One binomial per lattice rectangle whose cells all lie in ``P``."""
    P = frozenset(P)
    if not is_polyomino(P):
        raise DomainError("generators require a polyomino")
    xs = sorted({c.x for c in P} | {c.x + 1 for c in P})
    ys = sorted({c.y for c in P} | {c.y + 1 for c in P})
    out = []
    for a, i in enumerate(xs):
        for k in xs[a + 1 :]:
            for b, j in enumerate(ys):
                for l in ys[b + 1 :]:
                    if all(Cell(x, y) in P for x in range(i, k) for y in range(j, l)):
                        plus = tuple(sorted((Vertex(i, j), Vertex(k, l))))
                        minus = tuple(sorted((Vertex(k, j), Vertex(i, l))))
                        out.append(BinomialGenerator(plus, minus))
    return out


def krull_dim(P) -> int:
    P = frozenset(P)
    if not is_polyomino(P) or not is_simple(P):
        raise DomainError("krull_dim requires a simple polyomino")
    return len(vertices(P)) - len(P)


# ---------------------------------------------------------------------------
# Relation matrices
# ---------------------------------------------------------------------------

def _monomials(nvars: int, d: int) -> list[tuple]:
    """Degree-d monomials as sorted variable-index tuples.

    The order is descending lex on exponent vectors (``x0**d`` first).
    """
    return list(combinations_with_replacement(range(nvars), d))


def relation_rows(P, d: int, budget: int | None = None):
    """Columns (monomials) and sparse rows ``{col: coeff}`` of the degree-d relations."""
    P = frozenset(P)
    verts = sorted(vertices(P))
    vidx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    budget = budget_from_env() if budget is None else budget
    ncols = comb(n + d - 1, d) if d > 0 else 1
    if ncols > budget:
        raise ResourceError(f"degree {d} needs {ncols} monomials, over the budget of {budget}")
    cols = _monomials(n, d)
    cidx = {m: i for i, m in enumerate(cols)}
    rows = []
    if d >= 2:
        gens = [
            (tuple(vidx[v] for v in g.plus), tuple(vidx[v] for v in g.minus)) for g in generators(P)
        ]
        for m in _monomials(n, d - 2):
            for plus, minus in gens:
                a = cidx[tuple(sorted(m + plus))]
                b = cidx[tuple(sorted(m + minus))]
                rows.append({a: 1, b: -1})
    return cols, rows


def rank_mod_p(rows: list[dict], p: int) -> int:
    """Rank over GF(p) by sparse elimination on leading columns."""
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in r.items()}
                break
            f = r[lead]
            for c, v in piv.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return len(pivots)


def rank_integer(rows: list[dict]) -> int:
    """Exact rank over the rationals by fraction-free row reduction."""
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = r
                break
            a, b = piv[lead], r[lead]
            new = {}
            for c in set(r) | set(piv):
                nv = a * r.get(c, 0) - b * piv.get(c, 0)
                if nv:
                    new[c] = nv
            r = new
    return len(pivots)


def hilbert_function(P, d_max: int, exact: bool = False, budget: int | None = None) -> list[int]:
    """``H_0 .. H_{d_max}`` of the coordinate ring.

    Ranks are computed modulo two primes which must agree; ``exact=True``
    additionally runs the integer elimination and demands agreement.
    """
    P = frozenset(P)
    if not is_polyomino(P):
        raise DomainError("hilbert_function requires a polyomino")
    out = []
    for d in range(d_max + 1):
        cols, rows = relation_rows(P, d, budget)
        ranks = {rank_mod_p(rows, p) for p in PRIMES}
        if exact:
            ranks.add(rank_integer(rows))
        if len(ranks) != 1:
            raise InconsistencyError(f"rank computations disagree in degree {d}: {sorted(ranks)}")
        out.append(len(cols) - ranks.pop())
    return out


def h_from_hilbert(H, dim: int, r: int) -> IntPolynomial:
    """Numerator of the Hilbert series through degree ``r``.

    The same alternating sum must vanish at degree ``r + 1`` and every
    coefficient must be non-negative; otherwise ``dim`` or ``r`` is wrong.
    """
    H = list(H)
    if len(H) < r + 2:
        raise DomainError(f"need Hilbert values through degree {r + 1}")

    def coeff(i):
        return sum((-1) ** j * comb(dim, j) * H[i - j] for j in range(0, min(i, dim) + 1))

    h = [coeff(i) for i in range(r + 1)]
    tail = coeff(r + 1)
    if tail != 0:
        raise InconsistencyError(f"h does not vanish in degree {r + 1} (got {tail})")
    if any(c < 0 for c in h):
        raise InconsistencyError(f"negative h-vector entry in {h}")
    return IntPolynomial(h)


def hilbert_profile(P, exact: bool = False, budget: int | None = None) -> HilbertProfile:
    P = frozenset(P)
    r = rook_polynomial(P).degree
    dim = krull_dim(P)
    H = hilbert_function(P, r + 1, exact=exact, budget=budget)
    return HilbertProfile(tuple(H), dim, h_from_hilbert(H, dim, r))


def cross_validate(P, exact: bool = False, budget: int | None = None) -> bool:
    """True iff the oracle's h-polynomial equals the rook polynomial."""
    P = frozenset(P)
    if not (is_polyomino(P) and is_simple(P) and is_thin(P)):
        raise DomainError("cross_validate requires a simple thin polyomino")
    prof = hilbert_profile(P, exact=exact, budget=budget)
    return prof.h == rook_polynomial(P)


def dump_relation_matrix(P, d: int, out: TextIO, budget: int | None = None) -> int:
    """Write the degree-d relation matrix as ``row col value`` triplets; returns row count."""
    _, rows = relation_rows(P, d, budget)
    for i, row in enumerate(rows):
        for c in sorted(row):
            out.write(f"{i} {c} {row[c]}\n")
    return len(rows)
