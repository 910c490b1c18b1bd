import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sympres.errors import EnumerationBound
from sympres.exact import (INFINITE, GaussInt, GaussRational, I, ONE_PLUS_I, Z2i, int_det,
                           inverse, is_unimodular, isotropy_order, kernel_over_Z2i, matmul,
                           nullspace, rank, smith_normal_form)


def diag_matrix(diag, rows, cols):
    return [[diag[r] if r == c and r < len(diag) else 0 for c in range(cols)] for r in range(rows)]


def test_snf_textbook_example():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    diag, left, right = smith_normal_form(m)
    assert diag == [2, 6, 12]
    assert matmul(matmul(left, m), right) == diag_matrix(diag, 3, 3)


def test_snf_rank_deficient_and_rectangular():
    diag, left, right = smith_normal_form([[1, 2, 3], [2, 4, 6]])
    assert diag == [1, 0]
    assert matmul(matmul(left, [[1, 2, 3], [2, 4, 6]]), right) == diag_matrix(diag, 2, 3)


def test_snf_of_empty_and_zero():
    assert smith_normal_form([[0, 0], [0, 0]])[0] == [0, 0]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_reconstruction(m):
    diag, left, right = smith_normal_form(m)
    rows, cols = len(m), len(m[0])
    assert is_unimodular(left) and is_unimodular(right)
    assert matmul(matmul(left, m), right) == diag_matrix(diag, rows, cols)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_snf_determinant_is_diagonal_product(m):
    diag, _, _ = smith_normal_form(m)
    assert abs(int_det(m)) == diag[0] * diag[1] * diag[2]


def test_isotropy_order():
    assert isotropy_order([(1, 0), (0, 1)]) == 1
    assert isotropy_order([(2, 0), (0, 3)]) == 6
    assert isotropy_order([(1, 1)], rows=2) is INFINITE
    assert isotropy_order([]) is INFINITE
    assert repr(INFINITE) == "INFINITE"


def test_gauss_rational_arithmetic():
    a = GaussRational(1, 2)
    b = GaussRational(Fraction(1, 2), -1)
    assert a * b == GaussRational(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert I * I == -1
    assert a.conjugate() == GaussRational(1, -2)
    assert a.norm() == 5
    assert hash(GaussRational(3)) == hash(Fraction(3))
    with pytest.raises(ZeroDivisionError):
        a / GaussRational(0)


fractions = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 7))
gauss = st.builds(GaussRational, fractions, fractions)


@given(gauss, gauss, gauss)
def test_gauss_rational_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    if b:
        assert (a / b) * b == a


def test_z2i_ring():
    elems = Z2i.elements()
    assert len(elems) == 4
    for x in elems:
        assert x + x == Z2i()
    assert ONE_PLUS_I * ONE_PLUS_I == Z2i()
    assert Z2i.from_value(GaussInt(3, -1)) == Z2i(1, 1)
    assert GaussInt(1, 1).mod2() == ONE_PLUS_I


def test_kernel_over_z2i():
    one, zero = Z2i(1, 0), Z2i()
    kernel = kernel_over_Z2i([[one, one]])
    assert len(kernel) == 4
    assert all(a + b == zero for a, b in kernel)
    assert len(kernel_over_Z2i([[ONE_PLUS_I]])) == 2


def test_kernel_enumeration_bound():
    with pytest.raises(EnumerationBound):
        kernel_over_Z2i([[Z2i(1, 0)] * 9])


def test_field_linear_algebra():
    m = [[GaussRational(1), I], [I, GaussRational(-1)]]
    assert rank(m) == 1
    (v,) = nullspace(m)
    assert all(sum((a * b for a, b in zip(row, v)), GaussRational(0)) == 0 for row in m)
    inv = inverse([[2, 1], [1, 1]])
    assert inv == [[1, -1], [-1, 2]]


def test_random_unimodular_products_are_unimodular():
    rng = random.Random(3)
    for _ in range(20):
        m = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        _, left, right = smith_normal_form(m)
        assert abs(int_det(left)) == 1 and abs(int_det(right)) == 1
