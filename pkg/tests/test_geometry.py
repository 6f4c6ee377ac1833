import math

import numpy as np
import pytest

import isoratio as ir
from isoratio.errors import DomainError, PoleSingularityError, TargetOutOfRangeError

from conftest import tabulated_surface

TWO_PI = 2.0 * math.pi


class _FlatCone(ir.WarpingFunction):
    """f(t) = t, curvature zero everywhere; not a finite-volume warping,
    used only to probe the curvature formula."""

    has_analytic_derivatives = True

    def __init__(self):
        super().__init__(ir.DecayBound(M=1.0, alpha=1.0, T0=1.0))

    def value(self, t):
        return np.asarray(t, dtype=float)

    def deriv1(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def deriv2(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))


class TestCurvature:
    def test_expcusp_constant_negative_one_past_t1(self, exp_surface):
        for t in np.linspace(1.0, 40.0, 64):
            assert exp_surface.curvature(float(t)) == pytest.approx(-1.0,
                                                                    abs=1e-12)

    def test_flat_cone_zero(self):
        cone = _FlatCone()
        assert cone.curvature(0.5) == 0.0
        assert cone.curvature(7.0) == 0.0

    def test_gaussian_cusp_closed_form(self, gauss_surface):
        # finite differences of t e^{-t^2} give K(t) = 6 - 4 t^2
        for t in (0.4, 1.0, 1.3, 2.2):
            assert gauss_surface.curvature(t) == pytest.approx(6.0 - 4.0 * t * t,
                                                               rel=1e-10)

    def test_matches_finite_differences(self, exp_surface, gauss_surface):
        # step wide enough that roundoff eps/h^2 stays below the tolerance
        rng = np.random.default_rng(5)
        for surface in (exp_surface, gauss_surface):
            w = surface.warping
            brk = w.interior_breakpoints()
            for t in rng.uniform(0.1, w.decay.T0, size=50):
                h = 1e-3 * max(1.0, t)
                if any(abs(t - b) < 5 * h for b in brk):
                    continue  # stencil must not straddle an analytic joint
                second = (-w.value(t - 2 * h) + 16 * w.value(t - h)
                          - 30 * w.value(t) + 16 * w.value(t + h)
                          - w.value(t + 2 * h)) / (12 * h * h)
                fd = -second / w.value(t)
                assert surface.curvature(float(t)) == pytest.approx(
                    fd, rel=1e-6, abs=1e-6)

    def test_pole_guard(self, exp_surface):
        with pytest.raises(PoleSingularityError):
            exp_surface.curvature(1e-9)


class TestSphereArea:
    def test_expcusp_at_two(self, exp_surface):
        assert exp_surface.sphere_area(2.0) == pytest.approx(
            TWO_PI * math.exp(-2.0), rel=1e-14)

    def test_definition_with_unit_circle_measure(self, gauss_surface):
        for t in (0.3, 1.0, 2.5):
            assert gauss_surface.sphere_area(t) == pytest.approx(
                TWO_PI * gauss_surface.warping.value(t), rel=1e-14)

    def test_gaussian_at_one(self, gauss_surface):
        assert gauss_surface.sphere_area(1.0) == pytest.approx(
            TWO_PI * math.exp(-1.0), rel=1e-14)

    def test_vanishes_far_out(self, exp_surface, gauss_surface):
        assert exp_surface.sphere_area(40.0) < 1e-6
        assert gauss_surface.sphere_area(40.0) < 1e-6

    def test_nonpositive_radius_rejected(self, exp_surface):
        with pytest.raises(DomainError):
            exp_surface.sphere_area(0.0)


class TestVolumes:
    def test_disk_volume_at_zero(self, gauss_surface):
        assert gauss_surface.disk_volume(0.0) == 0.0

    def test_gaussian_total_volume_is_pi(self, gauss_surface):
        assert gauss_surface.total_volume == pytest.approx(math.pi, rel=1e-12)

    def test_gaussian_disk_closed_form(self, gauss_surface):
        t = math.sqrt(math.log(2.0))
        assert gauss_surface.disk_volume(t) == pytest.approx(math.pi / 2,
                                                             rel=1e-12)

    def test_tail_at_zero_is_total(self, gauss_surface):
        assert gauss_surface.tail_volume(0.0) == pytest.approx(
            gauss_surface.total_volume, rel=1e-9)

    def test_gaussian_tail_closed_form(self, gauss_surface):
        assert gauss_surface.tail_volume(1.0) == pytest.approx(
            math.pi * math.exp(-1.0), rel=1e-9)

    def test_expcusp_pure_tail(self, exp_surface):
        for t in (1.0, 2.0, 5.0):
            assert exp_surface.tail_volume(t) == pytest.approx(
                TWO_PI * math.exp(-t), rel=1e-9)

    def test_partition_at_random_radii(self, exp_surface, gauss_surface):
        rng = np.random.default_rng(13)
        for surface in (exp_surface, gauss_surface):
            A = surface.total_volume
            for t in rng.uniform(0.05, 8.0, size=50):
                gap = surface.disk_volume(float(t)) + surface.tail_volume(
                    float(t)) - A
                assert abs(gap) <= 1e-9 * A

    def test_monotone_inverse_roundtrip(self, exp_surface, gauss_surface):
        rng = np.random.default_rng(17)
        for surface in (exp_surface, gauss_surface):
            A = surface.total_volume
            for V in rng.uniform(1e-4, 1.0 - 1e-4, size=50) * A:
                t = surface.radius_of_disk_volume(float(V))
                assert abs(surface.disk_volume(t) - V) <= 1e-8 * A

    def test_radius_closed_form_inversion(self, gauss_surface):
        t = gauss_surface.radius_of_disk_volume(math.pi / 2)
        assert t == pytest.approx(math.sqrt(math.log(2.0)), abs=1e-10)

    def test_radius_continuity_at_pole(self, gauss_surface):
        assert gauss_surface.radius_of_disk_volume(1e-10) < 1e-4

    def test_radius_rejects_total_volume(self, gauss_surface):
        with pytest.raises(TargetOutOfRangeError):
            gauss_surface.radius_of_disk_volume(gauss_surface.total_volume)

    def test_power_cusp_two_matches_gaussian(self, gauss_surface):
        # same pointwise warping under a different decay certificate
        p2 = ir.SurfaceOfRevolution(ir.PowerCusp(2.0), n=1)
        assert p2.total_volume == pytest.approx(gauss_surface.total_volume,
                                                rel=1e-9)
        for t in (0.5, 1.5, 3.0):
            assert p2.disk_volume(t) == pytest.approx(
                gauss_surface.disk_volume(t), rel=1e-10)

    def test_higher_dimension_gaussian(self):
        # n = 2: total volume 4 pi * integral of t^2 e^{-2 t^2}
        s = ir.SurfaceOfRevolution(ir.GaussianCusp(), n=2)
        expected = 4.0 * math.pi * math.sqrt(math.pi / 2.0) / 8.0
        assert s.omega_n == pytest.approx(4.0 * math.pi, rel=1e-14)
        assert s.total_volume == pytest.approx(expected, rel=1e-10)


class TestWarpingInvariants:
    def test_expcusp_blend_is_c2_at_t1(self):
        w = ir.ExpCusp()
        h = 1e-7
        for order, fd in (
            (0, lambda f, t: f(t)),
            (1, lambda f, t: (f(t + h) - f(t - h)) / (2 * h)),
        ):
            left = fd(w.value, 1.0 - 5 * h)
            right = fd(w.value, 1.0 + 5 * h)
            assert left == pytest.approx(right, rel=1e-4, abs=1e-6)

    def test_expcusp_pole_normalization(self):
        w = ir.ExpCusp()
        assert w.value(0.0) == 0.0
        assert w.deriv1(0.0) == pytest.approx(1.0, abs=1e-12)
        assert w.deriv2(0.0) == pytest.approx(0.0, abs=1e-12)

    def test_positivity_enforced(self):
        ts = np.linspace(0.0, 4.0, 41)
        fs = ts * np.exp(-ts)
        fs[20] = -0.05
        with pytest.raises(DomainError):
            ir.TabulatedWarping(list(zip(ts, fs)),
                                ir.DecayBound(M=10.0, alpha=1.0, T0=4.0))

    def test_decay_certificate_enforced(self):
        ts = np.linspace(0.0, 4.0, 41)
        fs = ts * np.exp(-ts)
        # claims e^{-3t} from t = 1 on, which t e^{-t} clearly violates
        with pytest.raises(DomainError):
            ir.TabulatedWarping(list(zip(ts, fs)),
                                ir.DecayBound(M=1.0, alpha=3.0, T0=1.0))

    def test_tabulated_requires_pole_knot(self):
        with pytest.raises(DomainError):
            ir.TabulatedWarping([(0.5, 0.4), (1.0, 0.5), (2.0, 0.3),
                                 (3.0, 0.1)],
                                ir.DecayBound(M=10.0, alpha=1.0, T0=3.0))

    def test_power_cusp_requires_superlinear_exponent(self):
        with pytest.raises(DomainError):
            ir.PowerCusp(1.0)

    def test_scaled_warping_volume(self, gauss_surface):
        s = ir.SurfaceOfRevolution(ir.scaled_warping(ir.GaussianCusp(), 2.5),
                                   n=1)
        assert s.total_volume == pytest.approx(
            2.5 * gauss_surface.total_volume, rel=1e-10)


class TestCheckConditions:
    def test_expcusp_all_hold(self, exp_surface):
        rep = ir.check_conditions(exp_surface)
        assert rep.all_hold
        # the C^2 blend moves the maximum inside the blend region
        assert 0.6 < rep.t1 < 0.8
        assert all(any(w[0] == cond for w in rep.witnesses)
                   for cond in ("j", "jj", "jjj", "jv", "v"))

    def test_gaussian_maximum_location(self, gauss_surface):
        rep = ir.check_conditions(gauss_surface)
        assert rep.all_hold
        assert rep.t1 == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-6)

    def test_double_bump_fails_condition_j(self):
        def shape(ts):
            return ts * np.exp(-ts) + 0.8 * np.exp(-6.0 * (ts - 4.0) ** 2)

        surface = tabulated_surface(shape, 6.0, 1.0)
        rep = ir.check_conditions(surface)
        assert not rep.j_holds
        assert not rep.all_hold

    def test_tabulated_slow_neck_passes(self):
        surface = tabulated_surface(lambda t: t * np.exp(-0.5 * t), 6.0, 2.0)
        rep = ir.check_conditions(surface)
        assert rep.all_hold
        assert rep.t1 == pytest.approx(2.0, abs=1e-2)
