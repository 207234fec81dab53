"""Collapse data and the recursive rook-polynomial decomposition.

Given a simple thin polyomino ``P`` with the S-property, a collapse datum
``(I, J, PI)`` names a two-cell interval ``I = {C, D}`` hanging off a maximal
interval ``J`` at ``D``.  Removing ``C`` and then splitting along ``J`` writes
``r_P = (1 + t) r_R + t * prod(r_Qi)`` where every ``Qi`` is again in the
class.  This module builds all of those pieces and checks each identity with
two independent computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, TheoremViolation
from .grid import Cell, cells_beyond, components, is_connected, is_polyomino, is_simple, is_thin, neighbours, normalize
from .intervals import InnerInterval, end_cells, has_s_property, interval_index, maximal_inner_intervals
from .poly import IntPolynomial, product
from .rook import restricted_rook_polynomial, rook_number, rook_polynomial, rook_polynomial_through

PI_NONEMPTY = "PI_NONEMPTY"
PI_EMPTY_E_NEIGHBOUR_OF_CK = "PI_EMPTY_E_NEIGHBOUR_OF_CK"
PI_EMPTY_E_ENDCELL = "PI_EMPTY_E_ENDCELL"
PI_EMPTY_E_NOT_NEIGHBOUR = "PI_EMPTY_E_NOT_NEIGHBOUR"


def _cells_json(cells) -> list:
    return [[c.x, c.y] for c in sorted(cells)]


@dataclass(frozen=True)
class CollapseDatum:
    I: InnerInterval
    J: InnerInterval
    PI: frozenset
    D: Cell
    C: Cell | None = None
    E: Cell | None = None

    def key(self) -> tuple:
        return (self.I.key(), self.J.key(), tuple(sorted(self.PI)))

    def to_json_obj(self) -> dict:
        return {
            "I": self.I.to_json_obj(),
            "J": self.J.to_json_obj(),
            "PI": _cells_json(self.PI),
            "C": None if self.C is None else list(self.C),
            "D": list(self.D),
            "E": None if self.E is None else list(self.E),
        }


@dataclass(frozen=True)
class NeighbourhoodCase:
    tag: str
    c_cells: tuple  # C_1..C_k, by distance from D along J
    b_cells: tuple  # B_1..B_k aligned with c_cells
    b_next: Cell | None = None  # B_{k+1}, only when C_k has three neighbours

    @property
    def k(self) -> int:
        return len(self.c_cells)

    def to_json_obj(self) -> dict:
        return {
            "tag": self.tag,
            "k": self.k,
            "C": [list(c) for c in self.c_cells],
            "B": [list(b) for b in self.b_cells],
            "B_next": None if self.b_next is None else list(self.b_next),
        }


@dataclass(frozen=True)
class Glue:
    b_next: Cell
    target: Cell
    translation: tuple


@dataclass(frozen=True)
class Decomposition:
    """Pieces of the decomposition, in the coordinate frame of ``P``.

    ``Qi`` holds the final pieces (with the glued cell for the last one when
    ``glue`` is set); ``Q_tilde`` holds the path-filtered sets before gluing.
    """

    Q: frozenset
    R: frozenset
    Q_tilde: tuple
    Qi: tuple
    glue: Glue | None = None

    def to_json_obj(self) -> dict:
        return {
            "Q": _cells_json(normalize(self.Q)),
            "R": _cells_json(normalize(self.R)),
            "Qi": [_cells_json(normalize(q)) for q in self.Qi],
            "glue": None
            if self.glue is None
            else {
                "B_next": list(self.glue.b_next),
                "target": list(self.glue.target),
                "translation": list(self.glue.translation),
            },
        }


@dataclass
class IdentityReport:
    checks: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    case: NeighbourhoodCase | None = None
    decomposition: Decomposition | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.checks.values())

    def failures(self) -> list[str]:
        out = [k for k, ok in self.checks.items() if not ok]
        return out + ([f"construction: {self.error}"] if self.error else [])

    def to_json_obj(self) -> dict:
        return {
            "passed": self.passed,
            "error": self.error,
            "checks": dict(self.checks),
            "polys": {k: p.to_json_obj() for k, p in self.polys.items()},
            "case": None if self.case is None else self.case.to_json_obj(),
            "decomposition": None if self.decomposition is None else self.decomposition.to_json_obj(),
        }


# ---------------------------------------------------------------------------
# Collapse data
# ---------------------------------------------------------------------------

def _require_class(P: frozenset) -> None:
    if not is_polyomino(P) or not is_simple(P) or not is_thin(P):
        raise DomainError("collapse data require a simple thin polyomino")
    if len(P) < 2:
        raise DomainError("a single cell has no collapse datum")
    if not has_s_property(P):
        raise DomainError("collapse data require the S-property")


def _end_segments(J: InnerInterval, avoid: Cell) -> list[frozenset]:
    """Non-empty runs of ``J`` that start at an end of ``J`` and avoid ``avoid``."""
    cells = J.cells
    n = len(cells)
    out = set()
    for m in range(1, n):
        out.add(cells[:m])
        out.add(cells[n - m:])
    return [frozenset(run) for run in sorted(out) if avoid not in run]


def _data(P: frozenset, general: bool) -> list[CollapseDatum]:
    ivs = maximal_inner_intervals(P)
    index = interval_index(P)
    singles = {c for c, lst in index.items() if len(lst) == 1}
    out = []
    for I in ivs:
        meets = [L for L in ivs if L != I and len(I.cellset & L.cellset) == 1]
        if len(meets) != 1:
            continue
        J = meets[0]
        (D,) = I.cellset & J.cellset
        c_single = [c for c in I.cells if c in singles]
        e_single = [c for c in J.cells if c in singles]
        C = c_single[0] if len(c_single) == 1 else None
        E = e_single[0] if len(e_single) == 1 else None
        # a non-empty PI must sit at an end of J, otherwise R = P - {C, E}
        # falls apart and the deletion identities break
        if general:
            candidates = [frozenset()] + _end_segments(J, D)
        else:
            candidates = [frozenset()]
            if E is not None and E != D and E in end_cells(J):
                candidates.append(frozenset({E}))
        for PI in candidates:
            rest = P - I.cellset - PI
            if rest and is_connected(rest):
                out.append(CollapseDatum(I, J, PI, D, C, E))
    out.sort(key=CollapseDatum.key)
    return out


def collapse_data(P, general: bool = False) -> list[CollapseDatum]:
    """Every collapse datum of ``P`` in canonical order.

    With ``general=False`` the third component ranges over the empty set and
    the single cell of ``J``, which is all that can occur under the
    S-property.  ``general=True`` allows any end segment of ``J`` avoiding
    ``D`` and only requires a simple thin polyomino.  In both modes a
    non-empty third component must contain an end-cell of ``J``.
    """
    P = frozenset(P)
    if general:
        if not is_polyomino(P) or not is_simple(P) or not is_thin(P) or len(P) < 2:
            raise DomainError("collapse data require a simple thin polyomino with at least two cells")
        return _data(P, True)
    _require_class(P)
    data = _data(P, False)
    if not data:
        raise TheoremViolation("simple thin S-property polyomino without a collapse datum", cells=P)
    for d in data:
        if len(d.I) != 2 or d.C is None or d.E is None:
            raise TheoremViolation("collapse interval does not have exactly two cells", cells=P)
    return data


def make_datum(P, I_cells, J_cells, PI_cells=()) -> CollapseDatum:
    """Look up the datum with the given cell sets, or raise DomainError."""
    P = frozenset(P)
    want = (frozenset(I_cells), frozenset(J_cells), frozenset(PI_cells))
    for d in _data(P, True):
        if (d.I.cellset, d.J.cellset, d.PI) == want:
            return d
    raise DomainError("the given intervals do not form a collapse datum")


def first_second_end_cells(P, d: CollapseDatum) -> tuple[Cell, Cell]:
    first = d.E if d.PI == frozenset({d.E}) else d.D
    ends = end_cells(d.J)
    if first not in ends:
        raise TheoremViolation("first end-cell is not an end-cell of J", cells=frozenset(P))
    (second,) = ends - {first}
    return first, second


def _single_endcell(P: frozenset, index: dict, cell: Cell) -> bool:
    ivs = index[cell]
    return len(ivs) == 1 and cell in end_cells(ivs[0])


def lemma_clauses_hold(P, d: CollapseDatum) -> bool:
    """The refined-datum condition on the second end-cell of ``J``."""
    P = frozenset(P)
    _, second = first_second_end_cells(P, d)
    nbs = neighbours(P, second)
    if len(nbs) <= 2:
        return True
    index = interval_index(P)
    return any(_single_endcell(P, index, b) for b in nbs)


def refined_collapse_datum(P) -> CollapseDatum:
    """Canonically least collapse datum satisfying the lemma's clauses."""
    P = frozenset(P)
    for d in collapse_data(P):
        if lemma_clauses_hold(P, d):
            return d
    raise TheoremViolation("no collapse datum satisfies the refined clauses", cells=P)


def refined_collapse_data(P) -> list[CollapseDatum]:
    P = frozenset(P)
    return [d for d in collapse_data(P) if lemma_clauses_hold(P, d)]


# ---------------------------------------------------------------------------
# Neighbourhood of J
# ---------------------------------------------------------------------------

def classify_neighbourhood(P, d: CollapseDatum) -> NeighbourhoodCase:
    P = frozenset(P)
    J = d.J
    pos = {c: i for i, c in enumerate(J.cells)}
    dpos = pos[d.D]
    c_cells = sorted((c for c in J.cells if c not in (d.D, d.E)), key=lambda c: (abs(pos[c] - dpos), c))
    _, second = first_second_end_cells(P, d)
    index = interval_index(P)

    b_cells = []
    b_next = None
    for i, ci in enumerate(c_cells):
        outside = sorted(b for b in neighbours(P, ci) if b not in J.cellset)
        last = i == len(c_cells) - 1
        if len(outside) == 1:
            b_cells.append(outside[0])
        elif len(outside) == 2 and last and ci == second and d.E in neighbours(P, ci):
            qualifying = [b for b in outside if _single_endcell(P, index, b)]
            b_next = qualifying[0] if qualifying else outside[1]
            b_cells.append(outside[0] if outside[0] != b_next else outside[1])
        else:
            raise TheoremViolation(
                f"cell {tuple(ci)} of J has {len(outside)} neighbours outside J", cells=P
            )

    for i in range(len(c_cells) - 1):
        ci, cj = c_cells[i], c_cells[i + 1]
        if abs(pos[ci] - pos[cj]) == 1 and b_cells[i] in neighbours(P, b_cells[i + 1]):
            raise TheoremViolation("consecutive B cells on the same side of J", cells=P)

    if d.PI:
        tag = PI_NONEMPTY
    elif second == d.E:
        tag = PI_EMPTY_E_ENDCELL
    elif c_cells and second == c_cells[-1] and d.E in neighbours(P, second):
        tag = PI_EMPTY_E_NEIGHBOUR_OF_CK
    elif c_cells and second == c_cells[-1]:
        tag = PI_EMPTY_E_NOT_NEIGHBOUR
    else:
        raise TheoremViolation("neighbourhood of J matches no known case", cells=P)
    return NeighbourhoodCase(tag, tuple(c_cells), tuple(b_cells), b_next)


# ---------------------------------------------------------------------------
# Inductive search following the lemma's proof
# ---------------------------------------------------------------------------

def inductive_search(P, prefer_failing: bool = True) -> tuple[CollapseDatum, int]:
    """Refined datum via the proof's recursion; returns ``(datum, depth)``.

    The recursion starts from some collapse datum.  With ``prefer_failing``
    it starts from the least datum violating the clauses, so the reduction
    step actually runs whenever the polyomino admits one.
    """
    P = frozenset(P)
    data = collapse_data(P)
    start = data[0]
    if prefer_failing:
        start = next((d for d in data if not lemma_clauses_hold(P, d)), data[0])
    if lemma_clauses_hold(P, start):
        return start, 0

    case = classify_neighbourhood(P, start)
    if case.tag != PI_EMPTY_E_NEIGHBOUR_OF_CK or case.b_next is None:
        raise TheoremViolation("clause failure outside the three-neighbour case", cells=P)
    ck = case.c_cells[-1]
    away = cells_beyond(P, ck, start.E)
    P_prime = (P - away) | {start.E}
    if len(P_prime) >= len(P):
        raise TheoremViolation("reduction did not shrink the polyomino", cells=P)

    sub, depth = inductive_search(P_prime, prefer_failing)
    try:
        lifted = make_datum(P, sub.I.cellset, sub.J.cellset, sub.PI)
    except DomainError:
        raise TheoremViolation("datum of the reduced polyomino does not lift", cells=P) from None
    if not lemma_clauses_hold(P, lifted):
        raise TheoremViolation("lifted datum violates the clauses", cells=P)
    return lifted, depth + 1


def collapse_search_inductive(P) -> CollapseDatum:
    return inductive_search(P)[0]


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def build_decomposition(P, d: CollapseDatum, case: NeighbourhoodCase | None = None) -> Decomposition:
    P = frozenset(P)
    if not lemma_clauses_hold(P, d):
        raise DomainError("build_decomposition needs a datum satisfying the refined clauses")
    if case is None:
        case = classify_neighbourhood(P, d)
    Q = P - {d.C}
    R = P - d.I.cellset if not d.PI else P - {d.C, d.E}
    q_tilde = [cells_beyond(Q, ci, bi) for ci, bi in zip(case.c_cells, case.b_cells)]
    pieces = list(q_tilde)
    glue = None
    if case.b_next is not None:
        ck, bk, bn = case.c_cells[-1], case.b_cells[-1], case.b_next
        if cells_beyond(Q, ck, bn) != {bn}:
            raise DomainError("B_{k+1} is not a leaf; the datum is not refined")
        shift = (ck.x - bn.x, ck.y - bn.y)
        moved = Cell(bn.x + shift[0], bn.y + shift[1])
        if moved in q_tilde[-1] or moved not in neighbours(q_tilde[-1] | {moved}, bk):
            raise TheoremViolation("glued cell collides with or misses B_k", cells=P)
        pieces[-1] = q_tilde[-1] | {moved}
        glue = Glue(bn, ck, shift)
    return Decomposition(Q, R, tuple(q_tilde), tuple(pieces), glue)


def verify_decomposition(P, d: CollapseDatum) -> IdentityReport:
    """Evaluate both sides of every decomposition identity independently.

    Left-hand sides use restricted counts with attacks inherited from the
    ambient polyomino; right-hand sides use standalone rook polynomials of
    the constructed pieces.
    """
    P = frozenset(P)
    t = IntPolynomial.t()
    rep = IdentityReport()
    try:
        case = classify_neighbourhood(P, d)
        dec = build_decomposition(P, d, case)
    except (DomainError, TheoremViolation) as exc:
        rep.error = str(exc)
        return rep
    rep.case, rep.decomposition = case, dec
    Q, R, J = dec.Q, dec.R, d.J.cellset

    r_P = rook_polynomial(P)
    p_hat_C = restricted_rook_polynomial(P, {d.C})
    p_hat_I = restricted_rook_polynomial(P, d.I.cellset)
    p_thru_C = rook_polynomial_through(P, d.C)
    r_Q = rook_polynomial(Q)
    r_R = rook_polynomial(R)
    q_hat_D = restricted_rook_polynomial(Q, {d.D})
    q_hat_J = restricted_rook_polynomial(Q, J)
    r_Qi = [rook_polynomial(q) for q in dec.Qi]
    prod_Qi = product(r_Qi)

    c = rep.checks
    c["deletion_P"] = r_P == p_hat_C + p_hat_I * t
    c["through_C"] = p_thru_C == p_hat_I * t
    c["P_hat_C_is_Q"] = p_hat_C == r_Q
    c["P_hat_I_is_R"] = p_hat_I == r_R
    c["P_from_Q_R"] = r_P == r_Q + r_R * t
    c["deletion_Q"] = r_Q == q_hat_D + q_hat_J * t
    c["Q_hat_D_is_R"] = q_hat_D == r_R
    c["Q_hat_J_product"] = q_hat_J == prod_Qi
    c["rook_number_sum"] = sum(rook_number(q) for q in dec.Qi) == r_P.degree - 2
    c["assembled"] = r_P == (1 + t) * r_R + t * prod_Qi
    c["pieces_in_class"] = all(
        is_polyomino(q) and is_simple(q) and is_thin(q) and has_s_property(q) for q in dec.Qi
    )
    expected = set(dec.Q_tilde)
    if dec.glue is not None:
        expected.add(frozenset({dec.glue.b_next}))
    c["components_of_Q_minus_J"] = set(components(Q - J)) == expected

    rep.polys = {
        "r_P": r_P,
        "r_P_hat_C": p_hat_C,
        "r_P_hat_I": p_hat_I,
        "r_P_C": p_thru_C,
        "r_Q": r_Q,
        "r_R": r_R,
        "r_Q_hat_D": q_hat_D,
        "r_Q_hat_J": q_hat_J,
        "prod_r_Qi": prod_Qi,
    }
    return rep
