"""h-polynomials, the Charney-Davis sign, and the executable induction.

For a collection whose components are simple thin polyominoes the
h-polynomial of the coordinate ring equals the rook polynomial; Gorenstein
corresponds to the S-property and Koszul to simplicity, so both are read off
combinatorially here.  :mod:`thinpoly.hilbert` checks the first equality
independently on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .collapse import CollapseDatum, IdentityReport, refined_collapse_datum, verify_decomposition
from .errors import DomainError, TheoremViolation, UnsupportedInputError
from .grid import components, is_simple, is_thin, normalize
from .intervals import has_s_property
from .poly import IntPolynomial
from .rook import rook_polynomial


def _check_components(P: frozenset, s_property: bool) -> list[frozenset]:
    if not P:
        raise UnsupportedInputError("empty cell set")
    comps = components(P)
    for comp in comps:
        if not (is_simple(comp) and is_thin(comp)):
            raise UnsupportedInputError(
                "a component is not a simple thin polyomino; use the Hilbert oracle (hpoly --oracle)"
            )
        if s_property and not has_s_property(comp):
            raise UnsupportedInputError("a component lacks the S-property (its ring is not Gorenstein)")
    return comps


def h_polynomial(P) -> IntPolynomial:
    """h-polynomial of the coordinate ring, via ``h = r`` on each component."""
    P = frozenset(P)
    _check_components(P, s_property=False)
    return rook_polynomial(P)


def cd_value(h: IntPolynomial) -> int:
    """``(-1)**floor(deg h / 2) * h(-1)``."""
    if h.is_zero():
        raise DomainError("cd_value of the zero polynomial")
    sign = -1 if (h.degree // 2) % 2 else 1
    return sign * h(-1)


@dataclass(frozen=True)
class CdVerdict:
    h: IntPolynomial
    degree: int
    value: int
    sign_ok: bool
    parity_zero: bool
    koszul: bool = True
    gorenstein: bool = True

    def to_json_obj(self) -> dict:
        return {
            "h": self.h.to_json_obj(),
            "h_text": str(self.h),
            "degree": self.degree,
            "value": self.value,
            "sign_ok": self.sign_ok,
            "parity_zero": self.parity_zero,
            "koszul": self.koszul,
            "gorenstein": self.gorenstein,
        }


def is_cd(P) -> CdVerdict:
    """Charney-Davis verdict; raises TheoremViolation if the sign is wrong."""
    P = frozenset(P)
    _check_components(P, s_property=True)
    h = rook_polynomial(P)
    value = cd_value(h)
    parity_zero = h.degree % 2 == 0 or value == 0
    verdict = CdVerdict(h, h.degree, value, value >= 0, parity_zero)
    if not (verdict.sign_ok and verdict.parity_zero):
        raise TheoremViolation(
            f"Charney-Davis sign fails: value {value} for h = {h}", cells=P, state=verdict.to_json_obj()
        )
    return verdict


# ---------------------------------------------------------------------------
# Proof trace
# ---------------------------------------------------------------------------

@dataclass
class TraceNode:
    cells: frozenset
    rook_number: int
    value: int  # (-1)**floor(r/2) * r_P(-1), evaluated directly
    datum: CollapseDatum | None = None
    report: IdentityReport | None = None
    children: list = field(default_factory=list)
    leaf_reason: str | None = None  # "single_cell" or "odd_rook_number"

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0) if self.leaf_reason is None else 0

    def product_value(self) -> int:
        """Value predicted by the induction step from the children."""
        if self.leaf_reason is not None:
            return 0
        out = 1
        for c in self.children:
            out *= c.product_value()
        return out

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def to_json_obj(self) -> dict:
        return {
            "cells": [[c.x, c.y] for c in sorted(normalize(self.cells))],
            "rook_number": self.rook_number,
            "value": self.value,
            "leaf": self.leaf_reason,
            "datum": None if self.datum is None else self.datum.to_json_obj(),
            "identities": None if self.report is None else dict(self.report.checks),
            "case": None if self.report is None or self.report.case is None else self.report.case.tag,
            "children": [c.to_json_obj() for c in self.children],
        }


def _trace(P: frozenset) -> TraceNode:
    r = rook_polynomial(P)
    node = TraceNode(P, r.degree, cd_value(r))
    if len(P) == 1 or r.degree % 2:
        node.leaf_reason = "single_cell" if len(P) == 1 else "odd_rook_number"
        if node.value != 0:
            raise TheoremViolation("odd rook number with r(-1) != 0", cells=P)
        return node
    d = refined_collapse_datum(P)
    rep = verify_decomposition(P, d)
    node.datum, node.report = d, rep
    if not rep.passed:
        raise TheoremViolation(
            f"decomposition identities fail: {rep.failures()}", cells=P, state=rep.to_json_obj()
        )
    pieces = rep.decomposition.Qi
    # the (1 + t) factor kills r_R at t = -1
    if r(-1) != -_prod(rook_polynomial(q)(-1) for q in pieces):
        raise TheoremViolation("r_P(-1) != -prod r_Qi(-1)", cells=P, state=rep.to_json_obj())
    node.children = [_trace(normalize(q)) for q in pieces]
    if node.value != node.product_value():
        raise TheoremViolation("node value disagrees with the product of child values", cells=P)
    return node


def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def theorem_trace(P) -> TraceNode:
    """Run the rook-number induction on ``P`` and check every step."""
    P = frozenset(P)
    comps = _check_components(P, s_property=True)
    if len(comps) != 1:
        raise DomainError("theorem_trace expects a connected polyomino")
    return _trace(normalize(P))
