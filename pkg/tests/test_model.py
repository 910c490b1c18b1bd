import pytest
from hypothesis import given, strategies as st

from sympres.model import (COLUMN_MAJOR, VARIABLES, default_model, face_mask, mask_face,
                           parse_poly, relation_shift_table, relation_texts, shift_poly, shift_set,
                           shift_variable, u, vanishing, w, weight_matrix)
from sympres.presentation import PARAM_NAMES, ideal_check, parametrization_images, reduce_units
from sympres.poly import MultiPoly


def test_variables_and_weights():
    assert len(VARIABLES) == 15
    assert VARIABLES[w(3, 1)] == "w13" and VARIABLES[u(4)] == "u4"
    m = weight_matrix()
    assert [r[w(0, 1)] for r in m] == [1, 1, 0, 0, 0]
    assert [r[u(2)] for r in m] == [0, 0, -2, 0, 0]


def test_relations_are_homogeneous(model):
    assert len(model.relations) == 20
    assert all(g.is_homogeneous(model.weights) for g in model.relations)


def test_linearizations_differ_only_in_order():
    rows = relation_texts()
    cols = relation_texts(COLUMN_MAJOR)
    assert sorted(rows) == sorted(cols) and rows != cols
    assert rows[:5] != cols[:5]
    with pytest.raises(ValueError):
        relation_texts("diagonal")


def test_cyclic_shift_permutes_relations(model):
    table = relation_shift_table(model)
    assert sorted(idx for idx, _ in table) == list(range(20))
    g = model.relations[7]
    for k in range(5):
        g = shift_poly(g, 1)
    assert g == model.relations[7]


def test_shift_of_variables():
    assert shift_variable(w(0, 4)) == w(0, 1)
    assert shift_variable(u(4), 2) == u(1)
    assert shift_set({w(1, 2), u(0)}, 5) == frozenset({w(1, 2), u(0)})


@given(st.integers(0, 2 ** 15 - 1))
def test_mask_round_trip(mask):
    face = mask_face(mask)
    assert face_mask(face) == mask
    assert vanishing(face) | face == frozenset(range(15))


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("w01 + q7")
    with pytest.raises(ValueError):
        parse_poly("")
    assert parse_poly("1/2*w01 - w01") == parse_poly("w01") * -1 * parse_poly("1/2")


def test_ideal_check(model):
    check = ideal_check(model)
    assert check.ok
    assert check.to_dict() == {"relations": 20, "vanish_on_parametrization": 20,
                               "homogeneous": 20, "plucker_match": 5, "ok": True}


def test_column_major_misreads_plucker_block():
    check = ideal_check(default_model(COLUMN_MAJOR))
    assert all(check.vanishes)
    assert not check.ok and sum(check.plucker) < 5


def test_parametrization_shape():
    images = parametrization_images()
    assert images[u(3)] == MultiPoly.var(PARAM_NAMES, 12) ** 2
    assert all(im.total_degree() == 4 for im in images[:10])


@given(st.integers(0, 4), st.integers(1, 3), st.integers(0, 3))
def test_unit_reduction(k, a, b):
    t = MultiPoly.var(PARAM_NAMES, 4 + k)
    s = MultiPoly.var(PARAM_NAMES, 9 + k)
    x = MultiPoly.var(PARAM_NAMES, 0)
    assert reduce_units(t ** a * s ** (a + b) * x) == s ** b * x
