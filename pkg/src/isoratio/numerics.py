"""Deterministic 1-D numerical kernel.

Adaptive Gauss-Kronrod quadrature (including improper integrals whose tail
is controlled by an explicit exponential decay bound), bracketed monotone
root finding, global 1-D minimization by grid scan plus golden-section
refinement, and limit extrapolation for sequences sampled at geometrically
growing arguments.

Everything here is a pure function of its inputs; there is no global state,
so all routines are safe to call concurrently.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DomainError,
    NonIntegrableError,
    NotBracketedError,
    TargetOutOfRangeError,
    ToleranceNotMetError,
)

__all__ = [
    "Interval",
    "QuadratureResult",
    "DecayBound",
    "integrate",
    "solve_monotone",
    "minimize_1d",
    "extrapolate_limit",
]

_EPS = float(np.finfo(float).eps)

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
# (QUADPACK nodes and weights; the Gauss nodes are every other Kronrod node).
_XGK_HALF = np.array([
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
])
_WGK_HALF = np.array([
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
])
_WG_HALF = np.array([
    0.1294849661688697, 0.2797053914892767,
    0.3818300505051189, 0.4179591836734694,
])

_GK_NODES = np.concatenate([-_XGK_HALF[:-1], _XGK_HALF[::-1]])
_GK_WEIGHTS = np.concatenate([_WGK_HALF[:-1], _WGK_HALF[::-1]])
_G7_IDX = np.arange(1, 15, 2)
_G7_WEIGHTS = np.array([
    _WG_HALF[0], _WG_HALF[1], _WG_HALF[2], _WG_HALF[3],
    _WG_HALF[2], _WG_HALF[1], _WG_HALF[0],
])


@dataclass(frozen=True)
class Interval:
    """An integration or search interval [lo, hi]; hi may be +inf."""

    lo: float
    hi: float

    def __post_init__(self):
        if not math.isfinite(self.lo):
            raise DomainError(f"interval lower end must be finite, got {self.lo}")
        if math.isnan(self.hi):
            raise DomainError("interval upper end is NaN")
        if not self.lo < self.hi:
            raise DomainError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.hi)


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral together with a conservative error bound and
    the number of integrand evaluations spent."""

    value: float
    error_bound: float
    evaluations: int

    def __post_init__(self):
        if self.error_bound < 0:
            raise DomainError("error bound must be nonnegative")
        if self.evaluations < 1:
            raise DomainError("at least one evaluation is required")


@dataclass(frozen=True)
class DecayBound:
    """Certificate f(t) <= M * exp(-alpha * t) for all t >= T0."""

    M: float
    alpha: float
    T0: float

    def __post_init__(self):
        if not (self.M > 0 and self.alpha > 0):
            raise DomainError("decay bound requires M > 0 and alpha > 0")

    def remainder(self, t: float) -> float:
        """Bound on integral of f over [t, inf) for t >= T0."""
        return self.M * math.exp(-self.alpha * t) / self.alpha

    def scaled_power(self, coeff: float, power: int) -> "DecayBound":
        """Bound for coeff * f(t)**power given this bound on f."""
        return DecayBound(coeff * self.M**power, power * self.alpha, self.T0)


def _gk15_panel(f, a: float, b: float, vectorized: bool):
    """One Gauss-Kronrod 15/7 panel on [a, b]: (value, error, resabs)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    xs = c + h * _GK_NODES
    if vectorized:
        fs = np.asarray(f(xs), dtype=float)
    else:
        fs = np.array([f(x) for x in xs], dtype=float)
    if not np.all(np.isfinite(fs)):
        raise DomainError(f"integrand returned a non-finite value on [{a}, {b}]")
    sk = float(np.dot(_GK_WEIGHTS, fs))
    sg = float(np.dot(_G7_WEIGHTS, fs[_G7_IDX]))
    value = h * sk
    resabs = h * float(np.dot(_GK_WEIGHTS, np.abs(fs)))
    mean = 0.5 * sk
    resasc = h * float(np.dot(_GK_WEIGHTS, np.abs(fs - mean)))
    raw = h * abs(sk - sg)
    if resasc > 0.0 and raw > 0.0:
        err = resasc * min(1.0, (200.0 * raw / resasc) ** 1.5)
    else:
        err = raw
    if resabs > 0.0:
        err = max(err, 50.0 * _EPS * resabs)
    return value, err, resabs


def _adaptive(f, a, b, rel_tol, abs_floor, vectorized, max_panels):
    """Adaptive bisection driver over [a, b] with worst-panel-first refinement."""
    n_seed = int(min(64, max(1, math.ceil((b - a) / 4.0))))
    edges = np.linspace(a, b, n_seed + 1)
    heap = []
    total = 0.0
    total_err = 0.0
    evals = 0
    counter = 0
    for left, right in zip(edges[:-1], edges[1:]):
        v, e, _ = _gk15_panel(f, left, right, vectorized)
        evals += 15
        total += v
        total_err += e
        heapq.heappush(heap, (-e, counter, left, right, v))
        counter += 1
    frozen_err = 0.0
    panels = n_seed
    while True:
        target = max(rel_tol * abs(total), abs_floor)
        if total_err + frozen_err <= target:
            return QuadratureResult(total, total_err + frozen_err, evals)
        if not heap:
            raise ToleranceNotMetError(
                f"refinement exhausted at error {total_err + frozen_err:.3e} "
                f"(target {target:.3e}) on [{a}, {b}]")
        if panels >= max_panels:
            raise ToleranceNotMetError(
                f"panel limit {max_panels} reached at error "
                f"{total_err + frozen_err:.3e} (target {target:.3e}) on [{a}, {b}]")
        neg_e, _, left, right, v = heapq.heappop(heap)
        e = -neg_e
        mid = 0.5 * (left + right)
        if right - left <= 128.0 * _EPS * max(1.0, abs(mid)):
            # cannot be bisected further in floating point; keep its error
            total_err -= e
            frozen_err += e
            continue
        v1, e1, _ = _gk15_panel(f, left, mid, vectorized)
        v2, e2, _ = _gk15_panel(f, mid, right, vectorized)
        evals += 30
        total += (v1 + v2) - v
        total_err += (e1 + e2) - e
        heapq.heappush(heap, (-e1, counter, left, mid, v1))
        counter += 1
        heapq.heappush(heap, (-e2, counter, mid, right, v2))
        counter += 1
        panels += 1


def integrate(
    f: Callable[[float], float],
    domain: Interval,
    rel_tol: float = 1e-9,
    *,
    decay: DecayBound | None = None,
    vectorized: bool = False,
    abs_floor: float = 1e-14,
    max_panels: int = 4096,
) -> QuadratureResult:
    """Integrate f over the interval to |error| <= max(rel_tol*|value|, abs_floor).

    For an infinite upper end the caller must supply ``decay``, a certificate
    f(t) <= M exp(-alpha t) valid from T0 on.  The integral is then computed
    over [lo, T] for T deep enough into the certified region and the analytic
    remainder bound M exp(-alpha T)/alpha is added to the error bound.
    """
    if rel_tol <= 0:
        raise DomainError("rel_tol must be positive")
    if not domain.is_infinite:
        return _adaptive(f, domain.lo, domain.hi, rel_tol, abs_floor,
                         vectorized, max_panels)
    if decay is None:
        raise NonIntegrableError(
            "infinite upper limit requires an exponential decay bound")
    t_split = max(decay.T0, domain.lo)
    t_end = t_split + 40.0 / decay.alpha
    remainder = decay.remainder(t_end)
    res = _adaptive(f, domain.lo, t_end, rel_tol, abs_floor,
                    vectorized, max_panels)
    return QuadratureResult(res.value, res.error_bound + remainder,
                            res.evaluations)


def solve_monotone(
    f: Callable[[float], float],
    target: float,
    bracket: Interval,
    tol: float = 1e-10,
) -> float:
    """Solve f(t) = target for strictly monotone f on the bracket.

    Returns t with |f(t) - target| <= tol * max(1, |target|).  The bracket
    upper end may be +inf, in which case the upper bound is grown
    geometrically until the target is straddled.
    """
    lo = bracket.lo
    flo = f(lo)
    scale = max(1.0, abs(target))
    if abs(flo - target) <= tol * scale:
        return lo
    if bracket.is_infinite:
        step = max(1.0, abs(lo))
        hi = lo + step
        fhi = f(hi)
        tries = 0
        while (flo - target) * (fhi - target) > 0:
            tries += 1
            if tries > 60:
                raise NotBracketedError(
                    "no sign change found while expanding toward infinity")
            step *= 2.0
            hi = lo + step
            fhi = f(hi)
    else:
        hi = bracket.hi
        fhi = f(hi)
        if abs(fhi - target) <= tol * scale:
            return hi
        lo_v, hi_v = min(flo, fhi), max(flo, fhi)
        if not (lo_v < target < hi_v):
            raise TargetOutOfRangeError(
                f"target {target} outside the bracketed range [{lo_v}, {hi_v}]")
    root = brentq(lambda t: f(t) - target, lo, hi,
                  xtol=1e-15 * max(1.0, abs(lo), abs(hi)), rtol=4 * _EPS,
                  maxiter=200)
    if abs(f(root) - target) > tol * scale:
        raise ToleranceNotMetError(
            f"residual {abs(f(root) - target):.3e} exceeds {tol * scale:.3e}")
    return float(root)


def _golden(f, a, b, xatol):
    """Golden-section search on [a, b]; ties shrink toward the left end,
    and a left end that was never displaced can win outright."""
    invphi = 0.5 * (math.sqrt(5.0) - 1.0)
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1 = f(x1)
    f2 = f(x2)
    while b - a > xatol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    best = (x1, f1) if f1 <= f2 else (x2, f2)
    fa = f(a)
    if fa <= best[1]:
        return a, fa
    return best


def _parabolic_polish(f, x, fx, h, lo, hi, rounds=2):
    """Refine a located minimum with guarded three-point parabolic steps."""
    for _ in range(rounds):
        hl = min(h, x - lo) if x - lo > 0 else h
        hr = min(h, hi - x) if hi - x > 0 else h
        step = min(hl, hr)
        if step <= 0 or not math.isfinite(step):
            return x, fx
        fm = f(x - step)
        fp = f(x + step)
        denom = fm - 2.0 * fx + fp
        if denom <= 0 or not math.isfinite(denom):
            return x, fx
        shift = 0.5 * step * (fm - fp) / denom
        shift = max(-step, min(step, shift))
        cand = x + shift
        fc = f(cand)
        if fc <= fx:
            x, fx = cand, fc
        h = max(abs(shift), step / 16.0)
        if h <= 4.0 * _EPS * max(1.0, abs(x)):
            return x, fx
    return x, fx


def minimize_1d(
    f: Callable[[float], float],
    domain: Interval,
    grid_points: int = 256,
    tol: float = 1e-8,
) -> tuple[float, float]:
    """Global 1-D minimization: coarse grid scan, then golden-section
    refinement of the best bracket, then a guarded parabolic polish.

    Returns (argmin, min value).  Among equal grid values the smallest
    argument wins, and golden-section ties also shrink leftward, so a
    constant function minimizes at domain.lo.
    """
    if domain.is_infinite:
        raise DomainError("minimize_1d requires a finite interval")
    if grid_points < 64:
        raise DomainError("grid_points must be at least 64")
    xs = np.linspace(domain.lo, domain.hi, grid_points)
    fs = np.array([f(x) for x in xs], dtype=float)
    if not np.all(np.isfinite(fs)):
        raise DomainError("objective returned a non-finite value on the grid")
    i = int(np.argmin(fs))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, grid_points - 1)]
    xatol = max(tol, 4.0 * _EPS * max(1.0, abs(a), abs(b)))
    x, fx = _golden(f, a, b, xatol)
    if fs[i] < fx:
        x, fx = float(xs[i]), float(fs[i])
    x, fx = _parabolic_polish(f, x, fx, max(xatol, 1e-7 * (domain.hi - domain.lo)),
                              domain.lo, domain.hi)
    return float(x), float(fx)


def _aitken_level(v: np.ndarray) -> np.ndarray:
    """One Aitken delta-squared pass; entries with a vanishing second
    difference are passed through unchanged (already converged)."""
    d1 = v[2:] - v[1:-1]
    d2 = v[2:] - 2.0 * v[1:-1] + v[:-2]
    scale = np.max(np.abs(v)) if len(v) else 1.0
    safe = np.abs(d2) > 1e3 * _EPS * max(scale, 1.0)
    out = v[2:].copy()
    out[safe] = v[2:][safe] - d1[safe] ** 2 / d2[safe]
    return out


def extrapolate_limit(
    seq: Callable[[int], float] | Sequence[float],
    mode: str = "to-infinity",
    *,
    k_max: int = 16,
    stable_rtol: float = 1e-6,
    blowup_ratio: float = 1.05,
) -> tuple[float, bool]:
    """Estimate the limit of seq(k) as k grows.

    ``seq`` is either a callable defined for 1..k_max or an explicit sequence
    of at least 8 values.  The sequence is resampled at geometrically growing
    indices (1, 2, 4, ...) and accelerated with iterated Aitken passes, which
    is exact for geometric error decay.  Returns (estimate, stable) where
    stable means the last three accelerated values agree to ``stable_rtol``
    relative.  A positive tail that keeps growing monotonically with
    non-shrinking growth factors ending at or above ``blowup_ratio`` is
    reported as (+inf, True).
    """
    if mode != "to-infinity":
        raise DomainError(f"unsupported extrapolation mode {mode!r}")
    if callable(seq):
        values = np.array([float(seq(k)) for k in range(1, k_max + 1)])
    else:
        values = np.asarray(list(seq), dtype=float)
    if len(values) < 8:
        raise DomainError("at least 8 sequence values are required")
    if not np.all(np.isfinite(values)):
        raise DomainError("sequence values must be finite")
    idx = []
    j = 1
    while j <= len(values):
        idx.append(j - 1)
        j *= 2
    samples = values[idx]

    # Divergence at geometric argument growth: strictly increasing samples
    # whose successive growth factors do not shrink and end above the
    # blow-up threshold (a convergent tail has growth factors sinking to 1).
    if np.all(samples > 0) and np.all(np.diff(samples) > 0):
        growth = samples[1:] / samples[:-1]
        if (len(growth) >= 3 and np.all(np.diff(growth) >= -1e-3 * growth[:-1])
                and growth[-1] >= blowup_ratio):
            return math.inf, True
    # Mirror case, geometric decay to zero: shrink factors that never relax
    # back toward 1 identify a vanishing limit.
    if np.all(samples > 0) and np.all(np.diff(samples) < 0):
        shrink = samples[1:] / samples[:-1]
        if (len(shrink) >= 3 and np.all(np.diff(shrink) <= 1e-3 * shrink[:-1])
                and shrink[-1] <= 1.0 / blowup_ratio):
            return 0.0, True

    level = samples
    tail = samples[-3:]
    while len(level) >= 3:
        nxt = _aitken_level(level)
        if len(nxt) >= 3:
            tail = nxt[-3:]
        level = nxt
        if len(level) == 1:
            break
    estimate = float(level[-1])
    # a monotone sequence cannot have its limit short of the last sample
    if np.all(np.diff(samples) >= 0):
        estimate = max(estimate, float(samples[-1]))
    elif np.all(np.diff(samples) <= 0):
        estimate = min(estimate, float(samples[-1]))
    spread = float(np.max(tail) - np.min(tail))
    stable = spread <= stable_rtol * max(1e-300, abs(estimate), np.max(np.abs(tail)))
    return estimate, bool(stable)
