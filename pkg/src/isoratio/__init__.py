"""Isoperimetric profiles and Hamilton-type isoperimetric ratios on
rotationally symmetric surfaces of finite volume.

The library builds finite-volume warped metrics dt^2 + f(t)^2 dtheta^2
from a few cusp families, computes the isoperimetric profile over the
symmetric candidate regions, minimizes the linear and power ratio
functionals over the enclosed volume, and provides randomized oracles for
the algebraic split inequalities behind connectedness of the minimizers.
"""

from .errors import (
    BoundaryMinimumError,
    ConfigError,
    DomainError,
    IsoratioError,
    NonIntegrableError,
    NotBracketedError,
    OrderingViolatedError,
    PoleSingularityError,
    TargetOutOfRangeError,
    ToleranceNotMetError,
    UnstableError,
)
from .geometry import (
    ConditionsReport,
    ExpCusp,
    GaussianCusp,
    PowerCusp,
    SurfaceOfRevolution,
    TabulatedWarping,
    WarpingFunction,
    check_conditions,
    scaled_warping,
)
from .lemmas import (
    SplitInstance,
    SplitSearchReport,
    aggregate_slack_identity,
    check_split,
    disconnection_penalty,
    random_search_counterexample,
    split_lhs,
    split_rhs,
)
from .numerics import (
    DecayBound,
    Interval,
    QuadratureResult,
    extrapolate_limit,
    integrate,
    minimize_1d,
    solve_monotone,
)
from .profile import (
    ANNULUS,
    COMPLEMENT,
    DISK,
    CandidateRegion,
    ProfilePoint,
    annulus_oracle,
    annulus_region,
    complement_region,
    disk_region,
    liminf_small_volume_ratio,
    profile,
    profile_sweep,
)
from .ratios import (
    HypothesisReport,
    MinimizerCertificate,
    OrderingReport,
    RatioCurvePoint,
    check_theorem_ste4,
    check_theorem_ste5,
    iflat,
    istar,
    minimize_iflat,
    minimize_istar,
    ordering_check,
    ratio_curve_point,
    ratio_of_split,
)

__version__ = "0.1.0"
