import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sympres.errors import FaceEmpty
from sympres.exact import GaussRational, I
from sympres.model import parse_poly, shift_set, w
from sympres.poly import (GREVLEX, LEX, Ideal, MultiPoly, buchberger, is_groebner_basis,
                          is_reduced_basis, krull_dimension, krull_dimension_in_face_torus,
                          minor_determinant, nonempty_in_face_torus, normal_form)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, names=XY):
    return parse_poly(text, names)


def test_lex_basis_of_small_system():
    # reduced basis computed once with an independent CAS
    basis = buchberger(Ideal([P("x^2 + 2*x*y^2"), P("x*y + 2*y^3 - 1")]), LEX)
    assert sorted(g.to_text() for g in basis) == sorted([P("x").to_text(),
                                                         (P("y^3") - Fraction(1, 2)).to_text()])


def test_grevlex_basis_of_small_system():
    basis = buchberger(Ideal([P("x^3 - 2*x*y"), P("x^2*y + x - 2*y^2")]), GREVLEX)
    expected = [P("x^2"), P("x*y"), P("y^2") - P("x") * Fraction(1, 2)]
    assert sorted(g.to_text() for g in basis) == sorted(g.to_text() for g in expected)
    assert is_reduced_basis(basis)


def test_unit_ideal():
    basis = buchberger(Ideal([P("x"), P("x - 1")]))
    assert [g.to_text() for g in basis] == [MultiPoly.constant(XY, 1).to_text()]


def test_gaussian_coefficients():
    f = P("x^2") + MultiPoly.constant(XY, 1)
    g = P("x") - MultiPoly.constant(XY, I)
    basis = buchberger(Ideal([f, g]))
    assert normal_form(f, basis).is_zero()
    assert [b.to_text() for b in basis] == [g.to_text()]


small_polys = st.lists(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
    min_size=1, max_size=3,
).map(lambda ts: MultiPoly(XYZ, {(a, b, c): k for a, b, c, k in ts}))


@settings(max_examples=60, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3))
def test_buchberger_idempotent_and_contains_generators(gens):
    gens = [g for g in gens if not g.is_zero()] or [MultiPoly.var(XYZ, 0)]
    ideal = Ideal(gens)
    basis = buchberger(ideal)
    assert is_groebner_basis(basis)
    again = buchberger(basis)
    assert sorted(g.to_text() for g in again) == sorted(g.to_text() for g in basis)
    for g in gens:
        assert normal_form(g, basis).is_zero()


def test_krull_dimension():
    assert krull_dimension(Ideal([P("x*y", XYZ)])) == 2
    assert krull_dimension(Ideal([P("x", XYZ), P("y", XYZ)])) == 1
    assert krull_dimension(Ideal([P("x^2 - y*z", XYZ)])) == 2
    with pytest.raises(FaceEmpty):
        krull_dimension(Ideal([MultiPoly.constant(XYZ, 1)]))


def test_face_torus_membership():
    ideal = Ideal([P("x*y")])
    assert not nonempty_in_face_torus(ideal, {0, 1})
    assert nonempty_in_face_torus(ideal, {0})
    assert nonempty_in_face_torus(Ideal([P("x - y")]), {0, 1})
    assert not nonempty_in_face_torus(Ideal([P("x - y")]), {0})
    assert krull_dimension_in_face_torus(Ideal([P("x - y")]), {0, 1}) == 1
    with pytest.raises(FaceEmpty):
        krull_dimension_in_face_torus(ideal, {0, 1})


def test_weights_require_homogeneity():
    with pytest.raises(ValueError):
        nonempty_in_face_torus(Ideal([P("x - 1")]), {0, 1}, weights=[(1,), (1,)])


@settings(max_examples=40, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=2), small_polys,
       st.sets(st.integers(0, 2), min_size=1))
def test_nonempty_is_monotone(gens, extra, face):
    small = Ideal(gens)
    big = Ideal(gens + [extra])
    if not nonempty_in_face_torus(small, face):
        assert not nonempty_in_face_torus(big, face)


def test_nonempty_invariant_under_cyclic_shift(model):
    rng = random.Random(11)
    for _ in range(25):
        face = frozenset(v for v in range(15) if rng.random() < 0.6)
        got = nonempty_in_face_torus(model.ideal, face, model.weights)
        assert nonempty_in_face_torus(model.ideal, shift_set(face, 1), model.weights) == got


def test_differentiate_and_substitute(model):
    g0 = model.relations[0]
    assert g0.differentiate(w(1, 4)) == MultiPoly.var(model.names, w(2, 3))
    p = P("x^2*y + 3*y")
    assert p.differentiate(1) == P("x^2 + 3")
    assert p.substitute({1: 2}) == P("2*x^2 + 6")
    assert p.substitute({0: GaussRational(0, 1)}) == P("2*y")


def test_canonical_text():
    p = P("y - x^2 + 2*x*y")
    assert p.to_text() == "(-1)*x^2 + (2)*x^1*y^1 + (1)*y^1"
    assert P("2*x*y + y - x^2").to_text() == p.to_text()


def laplace(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    names = m[0][0].names
    total = MultiPoly(names)
    for c in range(n):
        sub = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * laplace(sub)
        total = total + term if c % 2 == 0 else total - term
    return total


@settings(max_examples=25, deadline=None)
@given(st.lists(small_polys, min_size=16, max_size=16))
def test_minor_matches_laplace(entries):
    m = [entries[4 * r:4 * r + 4] for r in range(4)]
    assert minor_determinant(m, range(4), range(4)) == laplace(m)
    assert minor_determinant(m, [1, 3], [0, 2]) == laplace([[m[1][0], m[1][2]], [m[3][0], m[3][2]]])


def test_minor_with_zero_row_is_zero():
    z = MultiPoly(XY)
    m = [[P("x"), P("y")], [z, z]]
    assert minor_determinant(m, [0, 1], [0, 1]).is_zero()
    assert minor_determinant(m, [0], [1]) == P("y")
