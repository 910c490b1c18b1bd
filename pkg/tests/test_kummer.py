import pytest

from sympres.errors import NotQ8Rep
from sympres.exact import Z2i
from sympres.group import T, gmat
from sympres.kummer import (A_REP, B_REP, T_PRIME, fixed_points_2torsion, group_order_mod2,
                            isotropy_partition_M4, kummer_counts, module, profile_solutions,
                            q8_orbit_census, q8_profile, special_submodule, verify_conjugation)


def test_conjugation_identity():
    assert verify_conjugation()
    assert not verify_conjugation(conjugates=T)


def test_q8_profiles():
    assert q8_profile(A_REP).as_tuple() == (2, 3, 2)
    assert q8_profile(B_REP).as_tuple() == (4, 0, 3)
    for rep in (A_REP, B_REP):
        assert q8_profile(rep).satisfies_equations()
        p = q8_profile(rep)
        assert q8_orbit_census(rep) == {8: p.n8, 4: p.n4, 2: p.n2}
    assert profile_solutions() == [(2, 3, 2), (4, 0, 3)]


def test_non_q8_rejected():
    with pytest.raises(NotQ8Rep):
        q8_profile((gmat([[1, 0], [0, 1]]),) * 3)
    with pytest.raises(NotQ8Rep):
        q8_profile((A_REP[0], A_REP[0], A_REP[1]))


def test_modules():
    assert len(module(2)) == 16
    assert len(special_submodule(4)) == 16
    assert special_submodule(1) == {(Z2i(0, 0),), (Z2i(1, 1),)}


def test_reflection_kernels_contain_special_points():
    special = special_submodule(4)
    for t in T_PRIME:
        fixed = fixed_points_2torsion(t)
        assert len(fixed) == 64 and special <= fixed


def test_partition_of_two_torsion():
    report = isotropy_partition_M4()
    assert report.ok and report.total_identity
    assert report.special_count == 16
    assert report.per_reflection == [48] * 5
    assert report.special_count + sum(report.per_reflection) == 256


def test_derived_counts():
    counts = kummer_counts()
    assert (counts.special_points, counts.a1_orbit_points, counts.components) == (16, 30, 20)
    assert counts.max_special_per_component == 4
    assert group_order_mod2() == 32
