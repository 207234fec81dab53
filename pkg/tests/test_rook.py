import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_attacks, brute_rook, polyominoes
from thinpoly.errors import DomainError
from thinpoly.grid import Cell, components, parse_ascii, symmetries, translate
from thinpoly.intervals import single_cells
from thinpoly.poly import IntPolynomial, product
from thinpoly.rook import (
    attacks,
    max_rook_configs,
    restricted_rook_polynomial,
    rook_configurations,
    rook_number,
    rook_polynomial,
    rook_polynomial_through,
)


@pytest.mark.parametrize(
    "name, coeffs",
    [("single", [1, 1]), ("domino", [1, 2]), ("L", [1, 3, 1]), ("U", [1, 5, 5, 1]), ("square", [1, 4, 2])],
)
def test_frozen_values(shapes, name, coeffs):
    assert rook_polynomial(shapes[name]).coeffs == tuple(coeffs)


def test_l_restrictions(shapes):
    L = shapes["L"]
    A, B = Cell(0, 1), Cell(0, 0)
    assert restricted_rook_polynomial(L, {A}) == IntPolynomial.of(1, 2)
    assert rook_polynomial_through(L, A) == IntPolynomial.of(0, 1, 1)
    assert restricted_rook_polynomial(L, {A, B}) == IntPolynomial.of(1, 1)
    assert rook_number(L) == 2


def test_gap_blocks_attack():
    P = parse_ascii("#.#")
    assert not attacks(P, Cell(0, 0), Cell(2, 0))
    assert rook_polynomial(P) == IntPolynomial.of(1, 2, 1)


def test_forbidden_outside_raises(shapes):
    with pytest.raises(DomainError):
        restricted_rook_polynomial(shapes["L"], {Cell(5, 5)})


def test_u_unique_maximum(shapes):
    assert max_rook_configs(shapes["U"]) == [frozenset(single_cells(shapes["U"]))]


@given(polyominoes(max_cells=7))
def test_matches_brute_force(P):
    assert list(rook_polynomial(P).coeffs) == brute_rook(P)


@given(polyominoes(max_cells=7), st.data())
def test_restricted_matches_brute_force(P, data):
    forbidden = data.draw(st.sets(st.sampled_from(sorted(P))))
    assert list(restricted_rook_polynomial(P, forbidden).coeffs) == brute_rook(P, forbidden)


@given(polyominoes())
def test_low_coefficients(P):
    r = rook_polynomial(P)
    assert r[0] == 1 and r[1] == len(P)


@given(polyominoes(), st.data())
def test_attack_symmetric_and_matches_definition(P, data):
    a = data.draw(st.sampled_from(sorted(P)))
    b = data.draw(st.sampled_from(sorted(P)))
    assert attacks(P, a, b) == attacks(P, b, a)
    if a != b:
        assert attacks(P, a, b) == brute_attacks(P, a, b)


@given(polyominoes(), st.data())
def test_restriction_monotone(P, data):
    small = data.draw(st.sets(st.sampled_from(sorted(P))))
    extra = data.draw(st.sets(st.sampled_from(sorted(P))))
    a, b = restricted_rook_polynomial(P, small), restricted_rook_polynomial(P, small | extra)
    assert all(a[i] >= b[i] for i in range(a.degree + 1))


@given(polyominoes(max_cells=6), polyominoes(max_cells=6))
def test_disjoint_union_multiplies(P, Q):
    Q = translate(Q, 20, 20)
    assert rook_polynomial(P | Q) == product(rook_polynomial(c) for c in components(P | Q))
    assert rook_polynomial(P | Q) == rook_polynomial(P) * rook_polynomial(Q)


@given(polyominoes())
def test_symmetry_invariant(P):
    assert {rook_polynomial(Q) for Q in symmetries(P)} == {rook_polynomial(P)}


@given(polyominoes(max_cells=7))
def test_configurations_enumerate_the_polynomial(P):
    counts = {}
    for conf in rook_configurations(P):
        counts[len(conf)] = counts.get(len(conf), 0) + 1
    r = rook_polynomial(P)
    assert [counts.get(k, 0) for k in range(r.degree + 1)] == list(r.coeffs)
