import json

import pytest

from sympres.errors import IncompleteTree, Malformed
from sympres.git import classify_orbit_type, relevant_faces_from_templates
from sympres.model import VARIABLES, parse_poly, u, w, weight_columns
from sympres.poly import MultiPoly
from sympres.smoothness import (NO_WITNESS, NOT_MONOMIAL, OUTSIDE_SET, PASS, WRONG_POWER, ZERO,
                                Claim, Context, build_jacobian, calibrate_linearization,
                                certificate_path, check_step, first_failing_step, judge,
                                mutate_context, parse_certificate, random_rank_probe,
                                verify_certificate)


def P(text):
    return parse_poly(text)


def raw_certificate():
    return json.loads(certificate_path().read_text())


def test_jacobian_entries(jacobian):
    # d(w14 w23 + w13 w24 - w12 w34)/d w14 = w23
    assert jacobian.entries[w(1, 4)][0] == P("w23")
    assert jacobian.entries[u(0)][0].is_zero()
    assert jacobian.entries[u(0)][19] == P("w01^2")


def test_judge_reasons():
    claim = Claim("MONOMIAL_IN", frozenset({w(0, 1), w(0, 2)}))
    assert judge(P("3*w01^2*w02"), claim).ok
    assert judge(MultiPoly(VARIABLES), claim).reason == ZERO
    assert judge(P("w01 + w02"), claim).reason == NOT_MONOMIAL
    assert judge(P("w01*w03"), claim).reason == OUTSIDE_SET
    power = Claim("PURE_POWER", frozenset({w(0, 1)}), 8)
    assert judge(P("w01^8"), power).ok
    assert judge(P("w01^7"), power).reason == WRONG_POWER
    assert str(judge(P("w01^8"), power)) == PASS


def test_certificate_verifies(certificate, model, jacobian):
    ok, transcript = verify_certificate(certificate, model=model, jacobian=jacobian)
    assert ok, transcript.failure
    assert all(sv.ok for sv in transcript.steps)
    assert sum(len(sv.verdicts) for sv in transcript.steps) == 16
    assert len(transcript.routes) == 167
    assert all(r.settled_by for r in transcript.routes)
    assert transcript.to_dict()["failure"] is None


def test_repaired_minor(certificate, jacobian):
    step = certificate.steps["type5a"]
    repaired = step.claims[1]
    assert repaired.transcribed_cols is not None
    assert jacobian.minor(step.context, repaired.rows, repaired.transcribed_cols).is_zero()
    assert jacobian.minor(step.context, repaired.rows, repaired.cols) == P("-w02^5*w03^2*w23^2")


def test_calibration_is_unique(certificate):
    cal = calibrate_linearization(certificate)
    assert cal.unique
    assert cal.chosen == "row-major"
    assert cal.first_claim["column-major"] != PASS


def test_mutation_fails_at_mutated_step(certificate, model, jacobian):
    mutated = mutate_context(certificate, "type1", "u4", 1)
    assert first_failing_step(mutated, model=model, jacobian=jacobian) == "type1"
    assert not check_step(jacobian, mutated.steps["type1"]).ok
    assert first_failing_step(certificate, model=model, jacobian=jacobian) is None


def test_dropping_a_family_leaves_a_gap(certificate, model, jacobian):
    with pytest.raises(IncompleteTree):
        verify_certificate(certificate.without_family("0"), model=model, jacobian=jacobian)


def test_malformed_certificates():
    bad = raw_certificate()
    bad["steps"][0]["claims"][0]["rows"] = [0, 1, 2]
    with pytest.raises(Malformed):
        parse_certificate(bad)
    bad = raw_certificate()
    bad["steps"][0]["context"]["zeros"].append("w99")
    with pytest.raises(Malformed):
        parse_certificate(bad)
    bad = raw_certificate()
    bad["steps"][0]["cases"][0]["goto"] = "nowhere"
    with pytest.raises(Malformed):
        verify_certificate(parse_certificate(bad))


def test_context_applicability():
    ctx = Context(frozenset({u(0), u(1)}), frozenset({w(0, 1)}))
    face = frozenset(range(15)) - {w(0, 1)}
    assert ctx.applies_to(face, weight_columns())
    assert not ctx.applies_to(frozenset(range(15)), weight_columns())
    assert ctx.shifted(1).zeros == frozenset({w(1, 2)})


def faces_of(label):
    return [f for f in relevant_faces_from_templates() if classify_orbit_type(f) == label]


def test_probe_rank_on_open_faces(model, jacobian):
    for label in ("0C", "0B", "1C", "1D"):
        res = random_rank_probe(model, faces_of(label)[0], trials=4, seed=1, jacobian=jacobian)
        assert res.status == "OK" and res.witnesses > 0
        assert res.max_rank == res.min_rank == 6


def test_probe_reports_no_witness(model, jacobian):
    res = random_rank_probe(model, faces_of("5C")[0], trials=3, seed=0, jacobian=jacobian)
    assert res.status == NO_WITNESS and res.witnesses == 0 and res.skipped == 3


def test_context_needs_independent_weights():
    ones = frozenset({w(0, 1), w(0, 2), w(1, 2), u(0)})
    assert not Context(ones, frozenset()).applies_to(frozenset(range(15)), weight_columns())
