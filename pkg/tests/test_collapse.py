from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thinpoly import collapse as co
from thinpoly.enumeration import filter_class, fixed_polyominoes
from thinpoly.errors import DomainError
from thinpoly.grid import Cell, is_simple, is_thin, normalize, parse_ascii
from thinpoly.intervals import has_s_property
from thinpoly.poly import IntPolynomial, product
from thinpoly.rook import restricted_rook_polynomial, rook_number, rook_polynomial

THREE_NEIGHBOUR = frozenset(
    Cell(x, y)
    for x, y in [(0, 0), (0, 1), (0, 2), (1, 1), (2, 1), (2, 0), (-1, 2), (-2, 0), (-2, 1), (-2, 2), (-3, 1), (-4, 0), (-4, 1)]
)


@lru_cache(maxsize=None)
def s_class(max_cells=8):
    return tuple(P for n in range(2, max_cells + 1) for P in filter_class(fixed_polyominoes(n), ["s_property"]))


def s_polys():
    return st.sampled_from(s_class())


def _datum(P, I, J):
    for d in co.collapse_data(P):
        if set(d.I.cells) == set(I) and set(d.J.cells) == set(J):
            return d
    raise AssertionError("datum not found")


def test_l_collapse_data(shapes):
    L = shapes["L"]
    data = co.collapse_data(L)
    assert {frozenset(d.I.cells) for d in data} == {
        frozenset({Cell(0, 0), Cell(0, 1)}),
        frozenset({Cell(0, 0), Cell(1, 0)}),
    }
    assert all(not d.PI for d in data)
    d = co.refined_collapse_datum(L)
    assert (d.C, d.D, d.E) == (Cell(0, 1), Cell(0, 0), Cell(1, 0))


def test_l_decomposition(shapes):
    L = shapes["L"]
    rep = co.verify_decomposition(L, co.refined_collapse_datum(L))
    assert rep.passed
    assert rep.case.tag == co.PI_EMPTY_E_ENDCELL and rep.case.k == 0
    assert rep.decomposition.Qi == ()
    assert rep.polys["r_R"] == IntPolynomial.of(1, 1)


def test_u_pentomino_piece_is_a_single_cell(shapes):
    U = shapes["U"]
    rep = co.verify_decomposition(U, co.refined_collapse_datum(U))
    assert rep.passed and rep.case.tag == co.PI_EMPTY_E_NEIGHBOUR_OF_CK
    assert [set(q) for q in rep.decomposition.Qi] == [{Cell(2, 1)}]


def test_comb_with_nonempty_third_component(shapes):
    P = shapes["comb"]
    d = _datum(P, [(2, 1), (2, 2)], [(0, 1), (1, 1), (2, 1), (3, 1)])
    assert set(d.PI) == {Cell(3, 1)}
    assert co.first_second_end_cells(P, d) == (Cell(3, 1), Cell(0, 1))
    rep = co.verify_decomposition(P, d)
    assert rep.passed and rep.case.tag == co.PI_NONEMPTY


def test_glued_case(shapes):
    P = shapes["glued"]
    d = _datum(P, [(0, 3), (1, 3)], [(1, 1), (1, 2), (1, 3)])
    rep = co.verify_decomposition(P, d)
    assert rep.passed
    glue = rep.decomposition.glue
    assert glue.b_next == Cell(2, 1) and glue.target == Cell(1, 1)
    Q = P - {d.C}
    assert restricted_rook_polynomial(Q, d.J.cellset) == product(rook_polynomial(q) for q in rep.decomposition.Qi)


@pytest.mark.parametrize(
    "text, I, tag",
    [
        ("#.\n##", [(0, 0), (0, 1)], co.PI_EMPTY_E_ENDCELL),
        ("##\n#.\n##", [(0, 0), (1, 0)], co.PI_EMPTY_E_NEIGHBOUR_OF_CK),
        (".#..\n####\n#..#", [(3, 0), (3, 1)], co.PI_EMPTY_E_NOT_NEIGHBOUR),
    ],
)
def test_case_tags(text, I, tag):
    P = parse_ascii(text)
    (d,) = [d for d in co.collapse_data(P) if set(d.I.cells) == {Cell(*c) for c in I} and not d.PI]
    assert co.classify_neighbourhood(P, d).tag == tag


def test_three_neighbour_second_end_cells():
    assert is_simple(THREE_NEIGHBOUR) and is_thin(THREE_NEIGHBOUR) and has_s_property(THREE_NEIGHBOUR)
    # every datum fails the three-neighbour clause at its second end-cell
    for d in co.collapse_data(THREE_NEIGHBOUR):
        _, second = co.first_second_end_cells(THREE_NEIGHBOUR, d)
        assert len([n for n in THREE_NEIGHBOUR if abs(n.x - second.x) + abs(n.y - second.y) == 1]) == 3


def test_recursion_depth_one_witness(shapes):
    _, depth = co.inductive_search(shapes["depth1"])
    assert depth == 1


def test_domain_checks(shapes):
    with pytest.raises(DomainError):
        co.collapse_data(shapes["square"])
    with pytest.raises(DomainError):
        co.collapse_data(parse_ascii("###"))


@given(s_polys())
def test_refined_datum_exists_and_decomposes(P):
    d = co.refined_collapse_datum(P)
    rep = co.verify_decomposition(P, d)
    assert rep.passed, rep.failures()
    pieces = rep.decomposition.Qi
    assert sum(rook_number(normalize(q)) for q in pieces) == rook_number(P) - 2
    r_R = rook_polynomial(rep.decomposition.R)
    t = IntPolynomial.t()
    assert rook_polynomial(P) == (IntPolynomial.one() + t) * r_R + t * product(rook_polynomial(q) for q in pieces)


@given(s_polys())
def test_inductive_search_agrees_with_filter(P):
    d, _ = co.inductive_search(P)
    assert co.lemma_clauses_hold(P, d)
    assert d.key() in {x.key() for x in co.collapse_data(P)}


@given(s_polys())
def test_general_mode_is_a_superset(P):
    narrow = {d.key() for d in co.collapse_data(P)}
    assert narrow <= {d.key() for d in co.collapse_data(P, general=True)}
