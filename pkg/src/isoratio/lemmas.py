"""Property-testing oracles for the split inequalities behind connectedness.

For positive L1, L2, A1, A2, A3 and p in {1, 2} the split inequality

    (L1+L2)**p * (1/(A1+A2) + 1/A3)
        > min( L1**p * (1/A1 + 1/(A2+A3)),  L2**p * (1/A2 + 1/(A1+A3)) )

says that merging two components (perimeters L1, L2 and volumes A1, A2,
complement A3) always has a worse linear/quadratic ratio than the better
component alone, which is why ratio minimizers are connected.  The p = 1
slack aggregates to exactly 2*A1*A2 / (A3*(A1+A2)) when both component
comparisons are forced, so there are no counterexamples.

All arithmetic is type-preserving: instances built from
:class:`fractions.Fraction` values are evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import SurfaceOfRevolution
from .profile import ANNULUS, CandidateRegion

__all__ = [
    "SplitInstance",
    "split_lhs",
    "split_rhs",
    "check_split",
    "SplitSearchReport",
    "random_search_counterexample",
    "disconnection_penalty",
]


@dataclass(frozen=True)
class SplitInstance:
    """Positive 5-tuple (L1, L2, A1, A2, A3) for the split inequalities."""

    L1: object
    L2: object
    A1: object
    A2: object
    A3: object

    def __post_init__(self):
        for name in ("L1", "L2", "A1", "A2", "A3"):
            if not getattr(self, name) > 0:
                raise DomainError(f"split instance requires {name} > 0")


def _require_p(p: int, conjecture: bool):
    if p in (1, 2):
        return
    if conjecture and isinstance(p, int) and p >= 1:
        return
    raise DomainError(
        "exponent p must be 1 or 2 (pass conjecture=True to explore others)")


def split_lhs(inst: SplitInstance, p: int = 1, *, conjecture: bool = False):
    """(L1+L2)**p * (1/(A1+A2) + 1/A3): the merged-region ratio."""
    _require_p(p, conjecture)
    return (inst.L1 + inst.L2) ** p * (1 / (inst.A1 + inst.A2) + 1 / inst.A3)


def split_rhs(inst: SplitInstance, p: int = 1, *, conjecture: bool = False):
    """min over the two single-component ratios."""
    _require_p(p, conjecture)
    r1 = inst.L1**p * (1 / inst.A1 + 1 / (inst.A2 + inst.A3))
    r2 = inst.L2**p * (1 / inst.A2 + 1 / (inst.A1 + inst.A3))
    return min(r1, r2)


def check_split(inst: SplitInstance, p: int = 1, *,
                conjecture: bool = False):
    """(holds, margin) with margin = lhs - rhs, expected strictly positive."""
    lhs = split_lhs(inst, p, conjecture=conjecture)
    rhs = split_rhs(inst, p, conjecture=conjecture)
    margin = lhs - rhs
    return margin > 0, margin


@dataclass(frozen=True)
class SplitSearchReport:
    """Outcome of a randomized counterexample hunt (zero violations means
    the inequality survived)."""

    p: int
    trials: int
    seed: int
    violations: int
    min_margin: float
    argmin_instance: SplitInstance


def random_search_counterexample(p: int, trials: int, seed: int, *,
                                 low_exp: float = -6.0, high_exp: float = 6.0,
                                 conjecture: bool = False) -> SplitSearchReport:
    """Sample instances log-uniformly over [10**low_exp, 10**high_exp]**5
    and report any violation of the split inequality plus the smallest
    margin observed.  Deterministic for a fixed seed."""
    _require_p(p, conjecture)
    if trials < 1:
        raise DomainError("at least one trial is required")
    rng = np.random.default_rng(seed)
    X = 10.0 ** rng.uniform(low_exp, high_exp, size=(trials, 5))
    L1, L2, A1, A2, A3 = (X[:, i] for i in range(5))
    lhs = (L1 + L2) ** p * (1.0 / (A1 + A2) + 1.0 / A3)
    r1 = L1**p * (1.0 / A1 + 1.0 / (A2 + A3))
    r2 = L2**p * (1.0 / A2 + 1.0 / (A1 + A3))
    margin = lhs - np.minimum(r1, r2)
    violations = int(np.count_nonzero(margin <= 0.0))
    i = int(np.argmin(margin))
    worst = SplitInstance(*(float(X[i, j]) for j in range(5)))
    return SplitSearchReport(p, trials, seed, violations,
                             float(margin[i]), worst)


def disconnection_penalty(surface: SurfaceOfRevolution,
                          annuli: tuple[CandidateRegion, CandidateRegion]):
    """Linear ratio of the union of two disjoint annuli against each part.

    Returns (d_union, (d_part1, d_part2)); the split inequality guarantees
    d_union > min(parts), i.e. disconnecting a region is always penalized.
    """
    a1, a2 = annuli
    if a1.kind != ANNULUS or a2.kind != ANNULUS:
        raise DomainError("disconnection penalty expects two annuli")
    lo1, hi1 = a1.boundary_radii
    lo2, hi2 = a2.boundary_radii
    if not (hi1 <= lo2 or hi2 <= lo1):
        raise DomainError("annuli must be disjoint")
    A = surface.total_volume
    A1, A2 = a1.volume, a2.volume
    A3 = A - A1 - A2
    if not (A1 > 0 and A2 > 0 and A3 > 0):
        raise DomainError("annuli must leave positive complement volume")
    inst = SplitInstance(a1.perimeter, a2.perimeter, A1, A2, A3)
    d_union = split_lhs(inst, 1)
    one = 1.0
    d1 = a1.perimeter * (one / A1 + one / (A2 + A3))
    d2 = a2.perimeter * (one / A2 + one / (A1 + A3))
    return float(d_union), (float(d1), float(d2))


def aggregate_slack_identity(inst: SplitInstance):
    """The exact p = 1 aggregation identity: summing the two normalized
    component comparisons leaves the slack 2*A1*A2 / (A3*(A1+A2)).
    Returns (sum of normalized terms - 1, closed-form slack); the two must
    agree, and positivity of the slack is what forbids counterexamples."""
    A1, A2, A3 = inst.A1, inst.A2, inst.A3
    lhs_sum = (A1 * (A2 + A3) + A2 * (A1 + A3)) / (A3 * (A1 + A2))
    return lhs_sum - 1, 2 * A1 * A2 / (A3 * (A1 + A2))


__all__.append("aggregate_slack_identity")
