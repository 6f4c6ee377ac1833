"""Isoperimetric profile over the symmetric candidate family.

On a rotationally symmetric surface the candidates for enclosing a given
volume are the geodesic disk about the pole and its complement (both have a
single geodesic sphere as boundary and both sides connected); under the
structural conditions checked in :mod:`isoratio.geometry` the true
isoperimetric regions are of this form, so the candidate minimum *is* the
profile there.  Annular two-boundary regions are kept purely as a
falsification oracle: they must never beat the single-sphere candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, TargetOutOfRangeError, UnstableError
from .geometry import SurfaceOfRevolution
from .numerics import extrapolate_limit

__all__ = [
    "DISK",
    "COMPLEMENT",
    "ANNULUS",
    "CandidateRegion",
    "ProfilePoint",
    "disk_region",
    "complement_region",
    "annulus_region",
    "profile",
    "profile_sweep",
    "small_volume_samples",
    "liminf_small_volume_ratio",
    "annulus_oracle",
]

DISK = "disk"
COMPLEMENT = "complement"
ANNULUS = "annulus"


@dataclass(frozen=True)
class CandidateRegion:
    """A region bounded by geodesic spheres: its kind, enclosed volume,
    boundary area (perimeter), and boundary radii."""

    kind: str
    volume: float
    perimeter: float
    boundary_radii: tuple[float, ...]


@dataclass(frozen=True)
class ProfilePoint:
    """Profile value at volume V and the candidate realizing it."""

    V: float
    value: float
    best: CandidateRegion


def disk_region(surface: SurfaceOfRevolution, t: float) -> CandidateRegion:
    """Geodesic disk of radius t about the pole."""
    return CandidateRegion(DISK, surface.disk_volume(t),
                           surface.sphere_area(t), (t,))


def complement_region(surface: SurfaceOfRevolution, t: float) -> CandidateRegion:
    """Complement of the geodesic disk of radius t (the end past t)."""
    return CandidateRegion(COMPLEMENT, surface.total_volume - surface.disk_volume(t),
                           surface.sphere_area(t), (t,))


def annulus_region(surface: SurfaceOfRevolution, t_a: float,
                   t_b: float) -> CandidateRegion:
    """Annulus {t_a < radius < t_b}; its boundary has two components."""
    if not 0 < t_a < t_b:
        raise DomainError("annulus requires 0 < t_a < t_b")
    vol = surface.disk_volume(t_b) - surface.disk_volume(t_a)
    per = surface.sphere_area(t_a) + surface.sphere_area(t_b)
    return CandidateRegion(ANNULUS, vol, per, (t_a, t_b))


def profile(surface: SurfaceOfRevolution, V: float) -> ProfilePoint:
    """Least boundary area among the disk and complement of volume V.

    By construction the same two sphere areas are compared for V and for
    A - V, so the profile is exactly symmetric about half the total volume.
    """
    A = surface.total_volume
    if not 0.0 < V < A:
        raise TargetOutOfRangeError(f"volume must lie in (0, {A}); got {V}")
    r_disk = surface.radius_of_disk_volume(V)
    r_comp = surface.radius_of_disk_volume(A - V)
    a_disk = surface.sphere_area(r_disk)
    a_comp = surface.sphere_area(r_comp)
    if a_disk <= a_comp:
        best = CandidateRegion(DISK, V, a_disk, (r_disk,))
    else:
        best = CandidateRegion(COMPLEMENT, V, a_comp, (r_comp,))
    return ProfilePoint(V, best.perimeter, best)


def profile_sweep(surface: SurfaceOfRevolution,
                  grid: Sequence[float]) -> list[ProfilePoint]:
    """Pointwise profile over a sorted volume grid; deterministic."""
    return [profile(surface, V) for V in grid]


def small_volume_samples(surface: SurfaceOfRevolution, k_max: int = 16):
    """Sphere areas and tail volumes along the ladder t_k = T0 * 2**(k/4),
    k = 0..k_max, dropping samples whose tail volume is too small for the
    quadrature to resolve reliably.  Returns (ts, areas, tails)."""
    d = surface.warping.decay
    ts_all = d.T0 * 2.0 ** (np.arange(k_max + 1) / 4.0)
    ts, areas, tails = [], [], []
    for t in ts_all:
        area = surface.sphere_area(float(t))
        tail = surface.tail_volume(float(t))
        if not (math.isfinite(area) and math.isfinite(tail)):
            break
        if tail < 1e-250 or area == 0.0:
            break
        ts.append(float(t))
        areas.append(float(area))
        tails.append(float(tail))
    if len(ts) < 8:
        raise UnstableError(
            "fewer than 8 usable samples on the small-volume ladder")
    return np.array(ts), np.array(areas), np.array(tails)


def liminf_small_volume_ratio(surface: SurfaceOfRevolution) -> tuple[float, bool]:
    """Small-volume limit of profile(V)/V, i.e. of sphere area over tail
    volume along the ladder of geometrically growing radii.

    When the warping has analytic derivatives the independent route
    -n f'(t)/f(t) is extrapolated as well and the two limits must agree to
    1e-4 relative (or both diverge).  If the extrapolation does not
    stabilize, the infimum of the last 8 ladder samples is returned as a
    lower estimate with stable = False.
    """
    ts, areas, tails = small_volume_samples(surface)
    ratios = areas / tails
    estimate, stable = extrapolate_limit(ratios)

    w = surface.warping
    if w.has_analytic_derivatives:
        fvals = np.asarray(w.value(ts), dtype=float)
        dvals = np.asarray(w.deriv1(ts), dtype=float)
        good = fvals > 0
        if np.count_nonzero(good) >= 8:
            logder = -surface.n * dvals[good] / fvals[good]
            est2, stable2 = extrapolate_limit(logder)
            if stable and stable2:
                both_inf = math.isinf(estimate) and math.isinf(est2)
                if not both_inf:
                    if math.isinf(estimate) != math.isinf(est2):
                        raise UnstableError(
                            "ratio and log-derivative limits disagree "
                            f"({estimate} vs {est2})")
                    if abs(estimate - est2) > 1e-4 * max(1.0, abs(estimate)):
                        raise UnstableError(
                            "ratio and log-derivative limits disagree "
                            f"({estimate} vs {est2})")

    if not stable and math.isfinite(estimate):
        return float(np.min(ratios[-8:])), False
    return estimate, stable


def annulus_oracle(surface: SurfaceOfRevolution, V: float,
                   grid_size: int = 256) -> CandidateRegion:
    """Best annulus of volume V over a brute-force grid of inner radii.

    The returned two-boundary candidate exists to be *worse* than the
    single-sphere profile value; equality is approached only in the
    degenerate limit of a vanishing inner circle.
    """
    A = surface.total_volume
    if not 0.0 < V < A:
        raise TargetOutOfRangeError(f"volume must lie in (0, {A}); got {V}")
    if grid_size < 128:
        raise DomainError("annulus oracle needs a grid of at least 128 points")
    headroom = min(1e-9 * A, 0.5 * (A - V))
    t_hi = surface.radius_of_disk_volume(A - V - headroom)
    t_lo = min(1e-3, t_hi / grid_size)
    best = None
    for t_a in np.linspace(t_lo, t_hi, grid_size):
        target = surface.disk_volume(float(t_a)) + V
        t_b = surface.radius_of_disk_volume(target)
        per = surface.sphere_area(float(t_a)) + surface.sphere_area(t_b)
        if best is None or per < best[0]:
            best = (per, float(t_a), t_b)
    return annulus_region(surface, best[1], best[2])
