import pytest

from sympres.errors import NotFaithful
from sympres.exact import INFINITE
from sympres.git import (OTHER, analyze_face, canonical_shift_mask, classify_orbit_type,
                         cyclic_quotient_sections, load_orbit_types, relevant_faces_from_templates,
                         template_patterns, templates, torus_isotropy)
from sympres.model import KAPPA, face_mask, shift_set, u, w, weight_columns

ORBIT_TYPE_COUNTS = [15, 10, 1, 10, 30, 10, 30, 15, 20, 5, 10, 10, 1]
ALL = frozenset(range(15))


def test_template_orbit_counts():
    ts = templates()
    assert [t.orbits for t in ts] == ORBIT_TYPE_COUNTS
    assert sum(ORBIT_TYPE_COUNTS) == 167
    for t in ts:
        assert len(t.vanishing_sets()) == t.orbits
    assert len(template_patterns()) == 167


def test_classification():
    assert classify_orbit_type(ALL - {u(k) for k in range(5)}) == "5C"
    assert classify_orbit_type(ALL - {u(k) for k in range(5)} - {w(0, 1)}) == "5B"
    assert classify_orbit_type(ALL) == "0C"
    assert classify_orbit_type(frozenset()) == OTHER


def test_overlapping_templates_rejected():
    table = load_orbit_types()
    table = dict(table, rows=table["rows"] + [dict(table["rows"][0], label="dup")])
    with pytest.raises(ValueError):
        template_patterns(table)


def test_canonical_shift_mask_is_orbit_minimum():
    face = {w(0, 1), u(3)}
    masks = [face_mask(shift_set(face, k)) for k in range(5)]
    assert all(canonical_shift_mask(m) == min(masks) for m in masks)


def test_torus_isotropy():
    cols = weight_columns()
    assert torus_isotropy(ALL, cols) == 1
    assert torus_isotropy({w(0, 1)}, cols) is INFINITE
    # the u's alone: weights -2 e_k give (Z/2)^5 in Z^5, halved to 16 on the sublattice
    assert torus_isotropy({u(k) for k in range(5)}, cols) == 16


def test_analyze_face_on_full_face():
    rec = analyze_face(ALL, weight_columns(), KAPPA)
    assert rec.semistable and rec.stable and rec.isotropy_order == 1
    assert rec.orbit_dim == 15


def test_stability_census(stability_report):
    rel = stability_report.relevant
    assert len(rel) == 167
    counts = stability_report.type_counts()
    assert [counts.get(t.label, 0) for t in templates()] == ORBIT_TYPE_COUNTS
    assert OTHER not in counts
    assert stability_report.semistable_equals_stable
    assert {r.isotropy_order for r in rel} == {1}


def test_dimensions_match_table(stability_report):
    by_label = {t.label: t for t in templates()}
    for r in stability_report.relevant:
        t = by_label[r.type_label]
        assert (r.orbit_dim, r.intersection_dim) == (t.dim, t.intersection_dim)


def test_relevant_faces_are_template_faces(stability_report):
    assert sorted(r.mask for r in stability_report.relevant) == \
        [face_mask(f) for f in relevant_faces_from_templates()]


def test_faces_closed_under_shift(stability_report):
    faces = {r.face for r in stability_report.records}
    assert all(shift_set(f, 1) in faces for f in faces)


def test_a1_figure(a1_figure):
    for panel in a1_figure["panels"]:
        got = cyclic_quotient_sections(a1_figure["r"], a1_figure["weights"], panel["d"], a1_figure["box"])
        assert got == {tuple(b) for b in panel["bullets"]}, panel["d"]


def test_sections_validate_inputs():
    with pytest.raises(NotFaithful):
        cyclic_quotient_sections(4, [2, 2], 0, 3)
    with pytest.raises(ValueError):
        cyclic_quotient_sections(1, [1, 1], 0, 3)
    with pytest.raises(ValueError):
        cyclic_quotient_sections(2, [-1, 1], 0, 3)
    assert cyclic_quotient_sections(3, [1, 2], 0, 2) == {(0, 0), (1, 1), (2, 2)}
