import math

import numpy as np
import pytest

import isoratio as ir
from isoratio.errors import BoundaryMinimumError, DomainError

from conftest import tabulated_surface

TWO_PI = 2.0 * math.pi

# root of e^x = 1 + 2x (x > 0), frozen from a 40-digit solve; the flat
# ratio of the Gaussian cusp is 2t/(1 - e^{-t^2}) with argmin t* = sqrt(x)
T_STAR = 1.120906422778534
GAUSS_MIN_VALUE = 3.1339479780520467
GAUSS_MIN_VOLUME = 0.8943113280385906  # pi * e^{-t*^2}


class TestRatioOfSplit:
    def test_linear_symmetric(self):
        assert ir.ratio_of_split(1.0, 1.0, 1.0, 1.0) == 2.0

    def test_quadratic_symmetric(self):
        assert ir.ratio_of_split(1.0, 1.0, 1.0, 2.0) == 2.0

    def test_consistent_with_iflat_curve(self, exp_surface):
        A = exp_surface.total_volume
        tail = TWO_PI * math.exp(-2.0)
        by_parts = ir.ratio_of_split(TWO_PI * math.exp(-2.0), tail, A - tail,
                                     1.0)
        assert ir.iflat(exp_surface, tail) == pytest.approx(by_parts,
                                                            rel=1e-9)

    def test_rejects_nonpositive_inputs(self):
        with pytest.raises(DomainError):
            ir.ratio_of_split(0.0, 1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            ir.ratio_of_split(1.0, -1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            ir.ratio_of_split(1.0, 1.0, 1.0, 0.5)


class TestCurves:
    def test_gaussian_iflat_closed_form(self, gauss_surface):
        # at V = pi e^{-t^2} the outer circle wins and the curve collapses
        # to 2t / (1 - e^{-t^2})
        for t in (1.0, 1.3, 1.8):
            V = math.pi * math.exp(-t * t)
            expected = 2.0 * t / (1.0 - math.exp(-t * t))
            assert ir.iflat(gauss_surface, V) == pytest.approx(expected,
                                                               rel=1e-9)

    def test_istar_at_half_volume(self, gauss_surface):
        A = gauss_surface.total_volume
        P = ir.profile(gauss_surface, A / 2).value
        assert ir.istar(gauss_surface, A / 2) == pytest.approx(
            P * P * 4.0 / A, rel=1e-12)

    def test_istar_vanishes_toward_full_volume(self, gauss_surface):
        A = gauss_surface.total_volume
        assert ir.istar(gauss_surface, 0.999 * A) < 1e-2 * ir.istar(
            gauss_surface, A / 2)

    def test_curve_point_labels_coincide(self, gauss_surface):
        pt = ir.ratio_curve_point(gauss_surface, 1.0)
        assert pt.iflat == pt.isharp_cand
        assert pt.istar == pt.istarstar_cand
        assert pt.iflat > 0 and pt.istar > 0


class TestMinimizeIflat:
    def test_gaussian_certificate(self, gauss_surface):
        cert = ir.minimize_iflat(gauss_surface)
        assert abs(math.exp(cert.t0**2) - 1.0 - 2.0 * cert.t0**2) <= 1e-6
        assert cert.value == pytest.approx(GAUSS_MIN_VALUE, rel=1e-9)
        assert cert.V0 == pytest.approx(GAUSS_MIN_VOLUME, rel=1e-6)
        assert cert.t0 == pytest.approx(T_STAR, abs=1e-7)
        assert cert.best.kind in (ir.DISK, ir.COMPLEMENT)
        assert cert.interior_margin > 0

    def test_gaussian_against_dense_grid(self, gauss_surface):
        cert = ir.minimize_iflat(gauss_surface)
        ts = np.linspace(0.05, 6.0, 10**6)
        dense = 2.0 * ts / (1.0 - np.exp(-ts * ts))
        assert abs(cert.value - float(np.min(dense))) <= 1e-6 * cert.value

    def test_expcusp_has_no_interior_minimum(self, exp_surface):
        # the flat ratio is 1 + V/(A - V) along the cusp, decreasing to 1;
        # the infimum sits at the volume endpoint
        with pytest.raises(BoundaryMinimumError) as exc:
            ir.minimize_iflat(exp_surface)
        assert 1.0 < exc.value.value < 1.01

    def test_argmin_symmetry_under_mirrored_search(self, gauss_surface):
        A = gauss_surface.total_volume
        low = ir.minimize_iflat(gauss_surface)
        high = ir.minimize_iflat(gauss_surface, search_upper_half=True)
        assert high.value == pytest.approx(low.value, rel=1e-8)
        assert high.V0 == pytest.approx(A - low.V0, rel=1e-6)
        assert low.V0 <= A / 2 <= high.V0

    def test_equality_chain_at_minimizer(self, gauss_surface):
        A = gauss_surface.total_volume
        cert = ir.minimize_iflat(gauss_surface)
        chain = ir.ratio_of_split(cert.best.perimeter, cert.V0, A - cert.V0,
                                  1.0)
        assert abs(chain - cert.value) <= 1e-12 * cert.value

    def test_scale_covariance(self, gauss_surface):
        rng = np.random.default_rng(31)
        A = gauss_surface.total_volume
        for c in rng.uniform(0.3, 4.0, size=20):
            scaled = ir.SurfaceOfRevolution(
                ir.scaled_warping(ir.GaussianCusp(), float(c)), n=1)
            V = float(rng.uniform(0.05, 0.95)) * A
            assert ir.iflat(scaled, c * V) == pytest.approx(
                ir.iflat(gauss_surface, V), rel=1e-9)
        scaled = ir.SurfaceOfRevolution(
            ir.scaled_warping(ir.GaussianCusp(), 2.0), n=1)
        cert = ir.minimize_iflat(scaled)
        assert cert.V0 == pytest.approx(2.0 * GAUSS_MIN_VOLUME, rel=1e-6)
        assert cert.value == pytest.approx(GAUSS_MIN_VALUE, rel=1e-8)


class TestTheoremChecks:
    def test_ste4_gaussian(self, gauss_surface):
        rep = ir.check_theorem_ste4(gauss_surface)
        assert math.isinf(rep.liminf_constant)
        assert rep.cond_i_holds and rep.cond_ii_holds
        assert rep.certificate is not None
        vals = set(rep.constants.values())
        assert len(vals) == 1
        assert rep.inf_value == pytest.approx(GAUSS_MIN_VALUE, rel=1e-9)

    def test_ste4_expcusp_condition_ii_fails(self, exp_surface):
        # the infimum equals the small-volume constant and is approached at
        # vanishing volume, so the strict inequality cannot hold
        rep = ir.check_theorem_ste4(exp_surface)
        assert rep.liminf_constant == pytest.approx(1.0, abs=1e-6)
        assert rep.cond_i_holds
        assert not rep.cond_ii_holds
        assert rep.certificate is None
        assert rep.inf_value >= rep.liminf_constant - 1e-9

    def test_ste5_small_volume_constant_vanishes(self, exp_surface,
                                                 gauss_surface):
        for surface in (exp_surface, gauss_surface):
            rep = ir.check_theorem_ste5(surface)
            assert not rep.cond_i_holds
            assert rep.certificate is None

    def test_boundary_flag_consistent_with_liminf(self):
        # engineered tail/neck combinations on both sides of the dichotomy:
        # an interior minimum exists exactly when the curve dips below the
        # small-volume constant
        shapes = [
            (lambda t: t * np.exp(-0.5 * t), 6.0, 2.0),
            (lambda t: t * np.exp(-3.0 * t), 4.0, 1.0),
            (lambda t: t * np.exp(-t * t), 3.0, 4.0),
            (lambda t: t * np.exp(-t), 5.0, 1.0),
            (lambda t: t * np.exp(-1.5 * t), 5.0, 1.2),
        ]
        outcomes = []
        for shape, t_end, alpha in shapes:
            surface = tabulated_surface(shape, t_end, alpha)
            c1, _ = ir.liminf_small_volume_ratio(surface)
            try:
                value = ir.minimize_iflat(surface).value
                boundary = False
            except BoundaryMinimumError as err:
                value = err.value
                boundary = True
            assert boundary == (c1 <= value)
            outcomes.append(boundary)
        assert True in outcomes and False in outcomes


class TestOrderingCheck:
    def test_slacks_are_zero_and_no_violation(self, gauss_surface):
        A = gauss_surface.total_volume
        rep = ir.ordering_check(gauss_surface, A * np.linspace(0.05, 0.95, 19))
        assert rep.grid_size == 19
        assert rep.max_flat_slack == 0.0
        assert rep.max_star_slack == 0.0

    def test_min_istar_sinks_with_endpoint_refinement(self, exp_surface):
        A = exp_surface.total_volume
        rep = ir.ordering_check(exp_surface,
                                A * np.array([1e-5, 1e-3, 0.1, 0.5]))
        assert rep.min_istar < 1e-3
        assert rep.min_istar_volume == pytest.approx(1e-5 * A, rel=1e-12)

    def test_single_midpoint_grid(self, gauss_surface):
        A = gauss_surface.total_volume
        rep = ir.ordering_check(gauss_surface, [A / 2])
        assert rep.grid_size == 1
        assert math.isfinite(rep.min_istar) and rep.min_istar > 0

    def test_istar_decreases_along_endpoint_sequence(self, exp_surface):
        A = exp_surface.total_volume
        seq = [ir.istar(exp_surface, A * 0.1 * 2.0**-j) for j in range(8)]
        assert all(a > b for a, b in zip(seq, seq[1:]))
        seq_hi = [ir.istar(exp_surface, A * (1 - 0.1 * 2.0**-j))
                  for j in range(8)]
        assert all(a > b for a, b in zip(seq_hi, seq_hi[1:]))
