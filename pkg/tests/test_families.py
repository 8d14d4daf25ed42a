import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radlab.errors import RangeError, SingularityError
from radlab.families import (
    SPLIT_RADIUS,
    Family,
    MemberInstance,
    SchwarzSpec,
    derivative_bound,
    extremal_derivative,
    extremal_log_derivative,
    extremal_value,
    make_member,
    member_log_derivative,
    member_value,
    sample_members,
    univalence_critical_point,
)
from radlab.verification import bound_excess

IDENT = SchwarzSpec.identity()
ZERO = SchwarzSpec.trivial()
FD_STEP = 1e-5


def identity_member(family):
    return make_member(family, IDENT, IDENT, IDENT)


def fd_log_derivative(f, z, h=FD_STEP):
    """Central difference of f, divided by f, times z."""
    return z * (f(z + h) - f(z - h)) / (2 * h * f(z))


def fd4(f, z, h=1e-3):
    """Fourth-order five-point central difference."""
    return (f(z - 2 * h) - 8 * f(z - h) + 8 * f(z + h) - f(z + 2 * h)) / (12 * h)


def disk_grid(n_radii=10, n_angles=10, rmax=0.9):
    r = np.linspace(0.05, rmax, n_radii)[:, None]
    t = 2 * np.pi * np.arange(n_angles)[None, :] / n_angles
    return (r * np.exp(1j * t)).ravel()


@pytest.fixture(scope="module")
def members_t1t2():
    return {f: sample_members(f, 1000, 42, 3) for f in (Family.T1, Family.T2)}


class TestDerivativeBound:
    def test_examples(self):
        for family in Family:
            assert derivative_bound(family, 0) == 0
        r = 1 / math.sqrt(8)
        assert derivative_bound(Family.T3, r) == pytest.approx(1, abs=1e-15)

    def test_t2_branches_meet_at_split(self):
        r = SPLIT_RADIUS
        first = r * (2 - r) / (1 - r)
        second = (1 + 4 * r + 6 * r**2 + r**4) / (4 * (1 - r**2))
        assert first == pytest.approx(1.1213203, abs=1e-7)
        assert abs(first - second) < 1e-12
        assert derivative_bound(Family.T2, r) == pytest.approx(first, abs=1e-15)
        above = np.nextafter(r, 1)
        assert derivative_bound(Family.T2, above) == pytest.approx(second, abs=1e-12)

    def test_t1_second_branch_as_printed(self):
        # does not meet the first branch at the split point
        r = np.nextafter(SPLIT_RADIUS, 1)
        assert derivative_bound(Family.T1, r) == pytest.approx(2.839, abs=1e-3)
        assert derivative_bound(Family.T1, SPLIT_RADIUS) == pytest.approx(1.182, abs=1e-3)

    @pytest.mark.parametrize("family", list(Family))
    def test_strictly_increasing_on_first_branch(self, family):
        r = np.linspace(0, SPLIT_RADIUS, 10_000)
        b = np.array([derivative_bound(family, x) for x in r])
        assert np.all(np.diff(b) > 0)

    def test_range(self):
        with pytest.raises(RangeError):
            derivative_bound(Family.T1, 1.0)
        with pytest.raises(RangeError):
            derivative_bound(Family.T2, -0.1)

    @pytest.mark.parametrize("family", [Family.T1, Family.T2])
    def test_attained_by_extremal_at_negative_real_point(self, family):
        for r in (0.05, 0.2, 0.35):
            w = extremal_log_derivative(family, -r)
            assert abs(w - 1) == pytest.approx(derivative_bound(family, r), abs=1e-14)

    @pytest.mark.parametrize("family", [Family.T1, Family.T2])
    def test_holds_for_sampled_members(self, family, members_t1t2):
        worst = max(float(bound_excess(m).max()) for m in members_t1t2[family])
        assert worst <= 1e-9

    def test_t3_stated_bound_exceeded_on_imaginary_axis(self):
        # z f3'/f3 - 1 = 3z / sqrt(1 + z^2) has modulus 3r / sqrt(1 - r^2) at z = ir
        r = 0.3
        w = extremal_log_derivative(Family.T3, 1j * r)
        assert abs(w - 1) == pytest.approx(3 * r / math.sqrt(1 - r * r), abs=1e-14)
        assert abs(w - 1) > derivative_bound(Family.T3, r) + 0.05


class TestExtremal:
    def test_values(self):
        assert extremal_value(Family.T1, 0) == 0
        assert extremal_value(Family.T3, 0) == 0
        assert extremal_value(Family.T2, 0.5) == pytest.approx(0.5 * 1.5 * math.exp(0.5), abs=1e-15)
        assert extremal_value(Family.T2, 0.5) == pytest.approx(1.2365410, abs=1e-7)

    @pytest.mark.parametrize("family", list(Family))
    def test_log_derivative_normalized(self, family):
        assert extremal_log_derivative(family, 0) == 1

    def test_log_derivative_examples(self):
        rho = (3 - math.sqrt(5)) / 4
        assert extremal_log_derivative(Family.T1, -rho) == pytest.approx(0.5, abs=1e-15)
        assert extremal_log_derivative(Family.T3, -1 / math.sqrt(8)) == pytest.approx(0, abs=1e-15)

    @pytest.mark.parametrize("family", [Family.T1, Family.T2])
    def test_pole(self, family):
        with pytest.raises(SingularityError):
            extremal_log_derivative(family, -1)

    @pytest.mark.parametrize("family", list(Family))
    def test_log_derivative_matches_finite_difference(self, family):
        z = disk_grid(rmax=0.8)
        fd = fd_log_derivative(lambda x: extremal_value(family, x), z)
        assert np.max(np.abs(fd - extremal_log_derivative(family, z))) < 1e-8

    @pytest.mark.parametrize("family", list(Family))
    def test_derivative_formula_matches_finite_difference(self, family):
        z = disk_grid(rmax=0.8)
        fd = fd4(lambda x: extremal_value(family, x), z)
        assert np.max(np.abs(fd - extremal_derivative(family, z))) < 1e-10

    def test_t1_derivative_displayed_formula(self):
        # f1'(z) = e^{2z}(4z^2 + 7z + 2) / (2 sqrt(1 + z))
        for z in disk_grid(5, 8, 0.8):
            expected = cmath.exp(2 * z) * (4 * z * z + 7 * z + 2) / (2 * cmath.sqrt(1 + z))
            fd = fd4(lambda x: extremal_value(Family.T1, x), z)
            assert abs(fd - expected) < 1e-10

    @pytest.mark.parametrize("family", list(Family))
    def test_conjugate_symmetry(self, family):
        z = disk_grid()
        assert np.allclose(extremal_log_derivative(family, np.conj(z)),
                           np.conj(extremal_log_derivative(family, z)), rtol=0, atol=1e-15)

    @pytest.mark.parametrize("family", list(Family))
    def test_matches_identity_member(self, family):
        z = disk_grid()
        diff = extremal_log_derivative(family, z) - member_log_derivative(identity_member(family), z)
        assert np.max(np.abs(diff)) < 1e-12
        assert np.allclose(extremal_value(family, z), member_value(identity_member(family), z), atol=1e-14)


class TestCriticalPoint:
    def test_values(self):
        assert univalence_critical_point(Family.T1) == pytest.approx(0.3596118, abs=1e-7)
        assert univalence_critical_point(Family.T2) == pytest.approx(0.3819660, abs=1e-7)
        assert univalence_critical_point(Family.T3) == pytest.approx(0.3535534, abs=1e-7)

    @pytest.mark.parametrize("family", list(Family))
    def test_derivative_vanishes(self, family):
        r = univalence_critical_point(family)
        assert abs(extremal_derivative(family, -r)) < 1e-14

    @pytest.mark.parametrize("family", list(Family))
    def test_no_smaller_zero(self, family):
        # |f'| on circles inside the critical radius stays away from 0
        r = univalence_critical_point(family)
        z = (np.linspace(0, 0.999 * r, 60)[:, None] * np.exp(2j * np.pi * np.arange(180) / 180)[None, :]).ravel()
        assert np.min(np.abs(extremal_derivative(family, z))) > 1e-4


class TestSchwarzSpec:
    def test_validation(self):
        with pytest.raises(RangeError):
            SchwarzSpec(2.0, ())
        with pytest.raises(RangeError):
            SchwarzSpec(1.0, (1.0,))

    def test_evaluate_contractive(self):
        spec = SchwarzSpec(cmath.exp(0.7j), (0.5 + 0.3j, -0.9, 0.2j))
        z = disk_grid(20, 36, 0.999)
        w, _ = spec.evaluate(z)
        assert np.all(np.abs(w) <= np.abs(z) + 1e-15)
        assert spec.evaluate(0)[0] == 0

    def test_derivative_matches_finite_difference(self):
        spec = SchwarzSpec(cmath.exp(-1.1j), (0.5 + 0.3j, -0.94, 0.2j, 0.8 - 0.1j))
        z = disk_grid(rmax=0.8)
        _, zdw = spec.evaluate(z)
        fd = z * (spec.evaluate(z + FD_STEP)[0] - spec.evaluate(z - FD_STEP)[0]) / (2 * FD_STEP)
        assert np.max(np.abs(fd - zdw)) < 1e-8

    def test_derivative_at_a_zero(self):
        spec = SchwarzSpec(1, (0.5,))
        w, zdw = spec.evaluate(0.5)
        # w = z (z - a)/(1 - a z), w'(a) = a / (1 - a^2)
        assert w == 0
        assert zdw == pytest.approx(0.5 * 0.5 / 0.75, abs=1e-15)

    def test_json_round_trip(self):
        spec = SchwarzSpec(cmath.exp(0.3j), (0.1 + 0.2j,))
        assert SchwarzSpec.from_dict(spec.to_dict()) == spec


class TestMembers:
    def test_identity_members_are_extremals(self):
        z = 0.3 + 0.2j
        assert member_value(identity_member(Family.T1), z) == pytest.approx(
            z * cmath.exp(2 * z) * cmath.sqrt(1 + z), abs=1e-15)
        assert member_value(identity_member(Family.T3), z) == pytest.approx(
            z * (z + cmath.sqrt(1 + z * z)) ** 3, abs=1e-15)

    def test_trivial_member_is_identity(self):
        m = make_member(Family.T2, ZERO, ZERO, ZERO)
        z = disk_grid()
        assert np.allclose(member_value(m, z), z, atol=1e-15)
        assert np.allclose(member_log_derivative(m, z), 1, atol=0)

    @pytest.mark.parametrize("family", list(Family))
    def test_log_derivative_normalized(self, family):
        for m in sample_members(family, 20, 5, 3):
            assert member_log_derivative(m, 0) == 1

    def test_t1_identity_member_vanishes_at_critical_point(self):
        rho = (7 - math.sqrt(17)) / 8
        assert abs(member_log_derivative(identity_member(Family.T1), -rho)) < 1e-15

    @pytest.mark.parametrize("family", list(Family))
    def test_log_derivative_matches_finite_difference(self, family):
        z = disk_grid(6, 12, 0.7)
        for m in sample_members(family, 25, 123, 3):
            fd = fd_log_derivative(lambda x: member_value(m, x), z)
            assert np.max(np.abs(fd - member_log_derivative(m, z))) < 1e-7

    def test_singular_factor(self):
        m = make_member(Family.T2, IDENT, IDENT, IDENT)
        with pytest.raises(SingularityError):
            member_log_derivative(m, -1)

    def test_json_round_trip(self):
        m = sample_members(Family.T3, 1, 9, 4)[0]
        assert MemberInstance.from_json(m.to_json()) == m
        data = m.to_dict()
        assert data["family"] == "T3"
        assert set(data) == {"family", "omega_p", "omega_1", "omega_2"}
        assert len(data["omega_1"]["rotation"]) == 2


class TestSampleMembers:
    def test_deterministic(self):
        assert sample_members(Family.T1, 1, 42, 0) == sample_members(Family.T1, 1, 42, 0)
        assert sample_members(Family.T1, 3, 42, 2) != sample_members(Family.T1, 3, 43, 2)

    def test_degree_and_modulus_caps(self):
        members = sample_members(Family.T2, 100, 7, 3)
        assert len(members) == 100
        for m in members:
            for spec in m.specs:
                assert 1 <= spec.degree <= 4
                assert all(abs(a) <= 0.95 for a in spec.zeros)
                assert abs(abs(spec.rotation) - 1) < 1e-12

    def test_normalization_by_finite_difference(self):
        for m in sample_members(Family.T2, 100, 7, 3):
            h = 1e-6
            fprime0 = (member_value(m, h) - member_value(m, -h)) / (2 * h)
            assert abs(member_value(m, 0)) == 0
            assert abs(fprime0 - 1) < 1e-10

    def test_degree_zero(self):
        m = sample_members(Family.T3, 1, 1, 0)[0]
        assert all(spec.zeros == () for spec in m.specs)
        assert np.isfinite(member_log_derivative(m, 0.5j))

    def test_bad_arguments(self):
        with pytest.raises(RangeError):
            sample_members(Family.T1, 0, 1, 1)
        with pytest.raises(RangeError):
            sample_members(Family.T1, 1, 1, -1)


@given(st.floats(0, 0.9), st.floats(0, 2 * math.pi))
@settings(max_examples=200, deadline=None)
def test_identity_member_extremal_agreement_property(r, t):
    z = r * cmath.exp(1j * t)
    for family in Family:
        assert abs(extremal_log_derivative(family, z) - member_log_derivative(identity_member(family), z)) < 1e-12
