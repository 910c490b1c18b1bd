import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sympres.errors import DegenerateWall
from sympres.polyhedral import (Cone, Hyperplane, chamber_of, combination, contains,
                                contains_relative_interior, dot, enumerate_chambers,
                                farkas_certificate, fourier_motzkin_contains, image_cone,
                                random_cone, solve_lp)

QUADRANT = Cone(2, [(1, 0), (0, 1)])


def test_membership_basics():
    assert contains(QUADRANT, (2, 3))
    assert not contains(QUADRANT, (-1, 3))
    assert contains(QUADRANT, (0, 0))
    assert contains(Cone(2, []), (0, 0))
    assert not contains(Cone(2, []), (1, 0))


def test_combination_reconstructs_point():
    cone = Cone(3, [(1, 0, 1), (0, 1, 1), (1, 1, 0)])
    u = (3, 2, 5)
    lam = combination(cone, u)
    assert all(x >= 0 for x in lam)
    assert tuple(sum(l * g[r] for l, g in zip(lam, cone.generators)) for r in range(3)) == u


def test_farkas_certificate_separates():
    y = farkas_certificate(QUADRANT, (-1, 3))
    assert all(dot(y, g) >= 0 for g in QUADRANT.generators)
    assert dot(y, (-1, 3)) < 0
    assert farkas_certificate(QUADRANT, (1, 1)) is None


def test_relative_interior():
    assert contains_relative_interior(QUADRANT, (1, 1))
    assert not contains_relative_interior(QUADRANT, (1, 0))
    line = Cone(2, [(1, 1), (2, 2)])
    assert contains_relative_interior(line, (3, 3))
    assert not contains_relative_interior(line, (0, 0))


def test_image_cone_uses_face_columns():
    cols = [(1, 0), (0, 1), (-1, 0)]
    assert image_cone({0, 1}, cols).generators == ((1, 0), (0, 1))
    assert contains(image_cone({0, 2}, cols), (-4, 0))


def test_lp_statuses():
    status, x = solve_lp([[1, 1]], [2], [1, 0])
    assert status == "optimal" and x[0] == 2
    assert solve_lp([[1, 1]], [-1])[0] == "infeasible"


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lp_agrees_with_fourier_motzkin(seed):
    rng = random.Random(seed)
    cone = random_cone(rng)
    u = [rng.randint(-4, 4) for _ in range(cone.ambient_dim)]
    assert contains(cone, u) == fourier_motzkin_contains(cone, u)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_outside_points_have_farkas_certificates(seed):
    rng = random.Random(seed)
    cone = random_cone(rng, max_gens=4)
    u = [rng.randint(-3, 3) for _ in range(cone.ambient_dim)]
    y = farkas_certificate(cone, u)
    if contains(cone, u):
        assert y is None
    else:
        assert all(dot(y, g) >= 0 for g in cone.generators) and dot(y, u) < 0


def test_chambers_of_two_lines():
    plane = Cone(2, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    walls = [Hyperplane((1, 0), label="x"), Hyperplane((0, 1), label="y")]
    chambers = enumerate_chambers(plane, walls)
    assert sorted(c.signs for c in chambers) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    for c in chambers:
        assert chamber_of(c.witness, walls) == c.signs


def test_chamber_count_independent_of_order():
    rng = random.Random(4)
    cone = Cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    walls = [Hyperplane((1, -1, 0)), Hyperplane((0, 1, -1)), Hyperplane((1, 0, -1)),
             Hyperplane((2, -1, -1)), Hyperplane((1, 1, -3))]
    base = len(enumerate_chambers(cone, walls))
    for _ in range(4):
        order = walls[:]
        rng.shuffle(order)
        assert len(enumerate_chambers(cone, order)) == base


def test_gram_pairing_wall():
    gram = ((1, 0), (0, -1))
    h = Hyperplane((1, 1), gram)
    assert h.functional() == (1, -1)
    assert h.value((3, 1)) == 2


def test_degenerate_wall_rejected():
    with pytest.raises(DegenerateWall):
        enumerate_chambers(Cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), [Hyperplane((0, 0, 0))])
    with pytest.raises(ValueError):
        enumerate_chambers(Cone(2, [(1, 0)]), [])


def test_point_on_wall_has_no_chamber():
    with pytest.raises(ValueError):
        chamber_of((1, 1), [Hyperplane((1, -1))])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_combinations_of_generators_are_members(seed):
    rng = random.Random(seed)
    cone = random_cone(rng)
    coeffs = [rng.randint(0, 3) for _ in cone.generators]
    u = [sum(c * g[r] for c, g in zip(coeffs, cone.generators)) for r in range(cone.ambient_dim)]
    assert contains(cone, u)
    assert fourier_motzkin_contains(cone, u)
