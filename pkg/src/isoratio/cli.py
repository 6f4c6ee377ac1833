"""Command-line front end.

Surfaces are described by INI-style config files with named sections::

    [surface]
    name = exponential-cusp
    n = 1
    family = expcusp        ; expcusp | gaussiancusp | powercusp | tabulated
    t1 = 1.0                ; expcusp only (rate optional, default 1)
    ; a = 2.0               ; powercusp only
    ; knots = 0:0, 0.5:0.4  ; tabulated only, comma-separated t:f pairs

    [decay]
    M = 1.0
    alpha = 1.0
    T0 = 1.0

    [tolerances]            ; optional overrides
    quadrature = 1e-9
    minimize = 1e-8

Subcommands: describe, sweep, minimize, verify, lemmas.  Output lines are
prefixed PASS / FAIL / INFO for scripting.  Exit codes: 0 success,
1 config or usage error, 2 hypothesis failure, 3 I/O error.  Sweeps are
written as comma-separated tables with full-precision scientific notation,
so reruns are byte-identical.  The environment variable ISORATIO_OUT_DIR
sets the default output directory.
"""

from __future__ import annotations

import argparse
import configparser
import math
import os
import sys
from pathlib import Path

import numpy as np

from .errors import (
    BoundaryMinimumError,
    ConfigError,
    IsoratioError,
    UnstableError,
)
from .geometry import (
    ExpCusp,
    GaussianCusp,
    PowerCusp,
    SurfaceOfRevolution,
    TabulatedWarping,
    check_conditions,
)
from .lemmas import random_search_counterexample
from .numerics import DecayBound
from .profile import liminf_small_volume_ratio, profile
from .ratios import (
    check_theorem_ste4,
    iflat,
    istar,
    minimize_iflat,
    minimize_istar,
    ordering_check,
    ratio_of_split,
)

__all__ = ["main", "entrypoint", "load_surface", "SWEEP_HEADER"]

SWEEP_HEADER = "V,profile,iflat,istar,candidate_kind,t"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that raises instead of exiting with code 2."""

    def error(self, message):
        raise _UsageError(message)


def _sci(x: float) -> str:
    return f"{x:.17e}"


def _get(cfg: configparser.ConfigParser, section: str, field: str) -> str:
    if not cfg.has_section(section):
        raise ConfigError(section, field, "missing section")
    if not cfg.has_option(section, field):
        raise ConfigError(section, field, "missing field")
    return cfg.get(section, field)


def _get_float(cfg, section, field) -> float:
    raw = _get(cfg, section, field)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(section, field, f"not a number: {raw!r}") from None


def _parse_knots(raw: str, section: str):
    knots = []
    for i, chunk in enumerate(p.strip() for p in raw.split(",")):
        if not chunk:
            continue
        if ":" not in chunk:
            raise ConfigError(section, "knots",
                              f"pair {i} must look like t:f, got {chunk!r}")
        t_s, f_s = chunk.split(":", 1)
        try:
            knots.append((float(t_s), float(f_s)))
        except ValueError:
            raise ConfigError(section, "knots",
                              f"pair {i} has a non-numeric entry: {chunk!r}") from None
    if len(knots) < 4:
        raise ConfigError(section, "knots", "need at least 4 t:f pairs")
    return knots


def load_surface(path: str | Path):
    """Parse a config file into (surface, name, tolerances dict)."""
    cfg = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = cfg.read(path)
    if not read:
        raise ConfigError("surface", "file", f"cannot read config {path!r}")
    name = _get(cfg, "surface", "name")
    family = _get(cfg, "surface", "family").strip().lower()
    n_raw = _get(cfg, "surface", "n")
    try:
        n = int(n_raw)
    except ValueError:
        raise ConfigError("surface", "n", f"not an integer: {n_raw!r}") from None
    decay = DecayBound(
        M=_get_float(cfg, "decay", "M"),
        alpha=_get_float(cfg, "decay", "alpha"),
        T0=_get_float(cfg, "decay", "T0"),
    )
    try:
        if family == "expcusp":
            t1 = _get_float(cfg, "surface", "t1") if cfg.has_option(
                "surface", "t1") else 1.0
            rate = _get_float(cfg, "surface", "rate") if cfg.has_option(
                "surface", "rate") else 1.0
            warping = ExpCusp(t1=t1, rate=rate)
        elif family == "gaussiancusp":
            warping = GaussianCusp()
        elif family == "powercusp":
            warping = PowerCusp(a=_get_float(cfg, "surface", "a"))
        elif family == "tabulated":
            knots = _parse_knots(_get(cfg, "surface", "knots"), "surface")
            warping = TabulatedWarping(knots, decay)
        else:
            raise ConfigError("surface", "family",
                              f"unknown family {family!r}")
    except IsoratioError:
        raise
    except ValueError as err:
        raise ConfigError("surface", "family", str(err)) from None
    # Builtin families derive their own certificates; the config decay
    # section is still required and validated (the tabulated family is the
    # one that consumes it directly as its tail).
    tolerances = {"quadrature": 1e-9, "minimize": 1e-8}
    if cfg.has_section("tolerances"):
        for key in tolerances:
            if cfg.has_option("tolerances", key):
                tolerances[key] = _get_float(cfg, "tolerances", key)
    surface = SurfaceOfRevolution(warping, n=n,
                                  quad_rtol=tolerances["quadrature"])
    return surface, name, tolerances


def _flag(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def cmd_describe(args) -> int:
    surface, name, _ = load_surface(args.config)
    w = surface.warping
    print(f"INFO surface {name} family={w.family} n={surface.n}")
    print(f"INFO total-volume {_sci(surface.total_volume)}")
    print(f"INFO decay M={_sci(w.decay.M)} alpha={_sci(w.decay.alpha)} "
          f"T0={_sci(w.decay.T0)}")
    rep = check_conditions(surface)
    print(f"{_flag(rep.j_holds)} cond-j t1={_sci(rep.t1)}")
    print(f"{_flag(rep.jj_holds)} cond-jj")
    print(f"{_flag(rep.jjj_holds)} cond-jjj volume-finite")
    print(f"{_flag(rep.jv_holds)} cond-jv tail-volumes-finite")
    print(f"{_flag(rep.v_holds)} cond-v")
    for cond, t, val in rep.witnesses:
        print(f"INFO witness {cond} t={_sci(t)} value={_sci(val)}")
    t_hi = w.decay.T0 + 8.0 / w.decay.alpha
    for t in np.linspace(max(rep.t1, 0.2), t_hi, 8):
        print(f"INFO curvature t={_sci(float(t))} "
              f"K={_sci(float(surface.curvature(float(t))))}")
    return EXIT_OK if rep.all_hold else EXIT_HYPOTHESIS


def _default_out(filename: str) -> Path:
    base = os.environ.get("ISORATIO_OUT_DIR", ".")
    return Path(base) / filename


def cmd_sweep(args) -> int:
    surface, name, _ = load_surface(args.config)
    if args.grid < 16:
        raise _UsageError("--grid must be at least 16")
    A = surface.total_volume
    out_path = Path(args.out) if args.out else _default_out(f"{name}-sweep.csv")
    grid = A * np.arange(1, args.grid + 1) / (args.grid + 1)
    lines = [SWEEP_HEADER]
    for V in grid:
        pt = profile(surface, float(V))
        fl = ratio_of_split(pt.value, float(V), A - float(V), 1.0)
        st = ratio_of_split(pt.value, float(V), A - float(V),
                            float(surface.n + 1))
        lines.append(",".join([
            _sci(float(V)), _sci(pt.value), _sci(fl), _sci(st),
            pt.best.kind, _sci(pt.best.boundary_radii[0]),
        ]))
    try:
        out_path.write_text("\n".join(lines) + "\n")
    except OSError as err:
        print(f"FAIL io {err}", file=sys.stderr)
        return EXIT_IO
    print(f"INFO wrote {out_path} rows={args.grid}")
    return EXIT_OK


def cmd_minimize(args) -> int:
    surface, name, _ = load_surface(args.config)
    minimizer = minimize_iflat if args.which == "iflat" else minimize_istar
    try:
        cert = minimizer(surface)
    except BoundaryMinimumError as err:
        print("INFO no interior minimum: curve decreases into the endpoint")
        print(f"INFO boundary-estimate value={_sci(err.value)} "
              f"V={_sci(err.volume)}")
        return EXIT_HYPOTHESIS
    print(f"INFO minimizer {name} curve={args.which}")
    print(f"INFO V0 {_sci(cert.V0)}")
    print(f"INFO value {_sci(cert.value)}")
    print(f"INFO t0 {_sci(cert.t0)}")
    print(f"INFO candidate {cert.best.kind}")
    print(f"INFO interior-margin {_sci(cert.interior_margin)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    surface, name, _ = load_surface(args.config)
    A = surface.total_volume
    ok = True
    print(f"INFO verify {name} n={surface.n} total-volume {_sci(A)}")

    rep = check_conditions(surface)
    for label, holds in (("cond-j", rep.j_holds), ("cond-jj", rep.jj_holds),
                         ("cond-jjj", rep.jjj_holds), ("cond-jv", rep.jv_holds),
                         ("cond-v", rep.v_holds)):
        print(f"{_flag(holds)} {label}")
        ok = ok and holds
    if not rep.all_hold:
        print("RESULT FAIL structural-conditions")
        return EXIT_HYPOTHESIS

    try:
        c1, stable = liminf_small_volume_ratio(surface)
    except UnstableError as err:
        print(f"FAIL liminf {err}")
        print("RESULT FAIL")
        return EXIT_HYPOTHESIS
    c1_str = "inf" if math.isinf(c1) else _sci(c1)
    print(f"INFO C1 {c1_str} stable={stable}")

    ste4 = check_theorem_ste4(surface)
    print(f"{_flag(ste4.cond_i_holds)} ste4-cond-i C1>0")
    print(f"INFO iflat-inf {_sci(ste4.inf_value)} "
          f"interior={ste4.certificate is not None}")
    print(f"{_flag(ste4.cond_ii_holds)} ste4-cond-ii iflat-inf<C1")
    ok = ok and ste4.cond_i_holds and ste4.cond_ii_holds
    if ste4.certificate is not None:
        cert = ste4.certificate
        chain = ratio_of_split(cert.best.perimeter, cert.V0, A - cert.V0, 1.0)
        chain_ok = abs(chain - cert.value) <= 1e-9 * max(1.0, cert.value)
        print(f"{_flag(chain_ok)} equality-chain iflat=C=D "
              f"value={_sci(cert.value)} recomputed={_sci(chain)}")
        print(f"INFO minimizer V0={_sci(cert.V0)} t0={_sci(cert.t0)} "
              f"kind={cert.best.kind} margin={_sci(cert.interior_margin)}")
        ok = ok and chain_ok

    grid = np.concatenate([
        A * np.array([1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.25, 0.5]),
        A * (1.0 - np.array([1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.25])),
    ])
    order = ordering_check(surface, np.sort(grid))
    order_ok = order.max_flat_slack <= 1e-12 and order.max_star_slack <= 1e-12
    print(f"{_flag(order_ok)} ordering max-slack "
          f"{_sci(max(order.max_flat_slack, order.max_star_slack))}")
    ok = ok and order_ok

    mid = istar(surface, 0.5 * A)
    ends = max(istar(surface, 1e-4 * A), istar(surface, (1.0 - 1e-4) * A))
    vanish_ok = ends <= 1e-2 * mid and order.min_istar <= 1e-2 * mid
    print(f"{_flag(vanish_ok)} istar-endpoints min={_sci(order.min_istar)} "
          f"mid={_sci(mid)}")
    ok = ok and vanish_ok

    v_pairs = A * np.array([0.1, 0.3, 0.45])
    asym = max(abs(iflat(surface, float(v)) - iflat(surface, float(A - v)))
               / iflat(surface, float(v)) for v in v_pairs)
    sym_ok = asym <= 1e-9
    print(f"{_flag(sym_ok)} profile-symmetry max-asymmetry={_sci(asym)}")
    ok = ok and sym_ok

    print(f"RESULT {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def cmd_lemmas(args) -> int:
    if args.p not in (1, 2) and not args.conjecture:
        raise _UsageError(
            f"p={args.p} is outside the supported exponents {{1, 2}}; "
            "pass --conjecture to explore it anyway")
    report = random_search_counterexample(args.p, args.trials, args.seed,
                                          conjecture=args.conjecture)
    print(f"INFO split-inequality p={report.p} trials={report.trials} "
          f"seed={report.seed}")
    print(f"INFO min-margin {_sci(report.min_margin)}")
    w = report.argmin_instance
    print(f"INFO argmin L1={_sci(w.L1)} L2={_sci(w.L2)} A1={_sci(w.A1)} "
          f"A2={_sci(w.A2)} A3={_sci(w.A3)}")
    holds = report.violations == 0
    print(f"{_flag(holds)} violations {report.violations}")
    return EXIT_OK if holds else EXIT_HYPOTHESIS


def _build_parser() -> _Parser:
    parser = _Parser(prog="isoratio",
                     description="isoperimetric profiles and Hamilton-type "
                                 "ratio functionals on surfaces of revolution")
    sub = parser.add_subparsers(dest="command", required=True)

    p_desc = sub.add_parser("describe", help="surface summary and "
                                             "structural conditions")
    p_desc.add_argument("config")
    p_desc.set_defaults(func=cmd_describe)

    p_sweep = sub.add_parser("sweep", help="tabulate profile and ratio curves")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--grid", type=int, default=512)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_min = sub.add_parser("minimize", help="globally minimize a ratio curve")
    p_min.add_argument("config")
    p_min.add_argument("--which", choices=("iflat", "istar"), default="iflat")
    p_min.set_defaults(func=cmd_minimize)

    p_ver = sub.add_parser("verify", help="run the full hypothesis and "
                                          "ordering audit")
    p_ver.add_argument("config")
    p_ver.set_defaults(func=cmd_verify)

    p_lem = sub.add_parser("lemmas", help="randomized split-inequality search")
    p_lem.add_argument("--p", type=int, default=1)
    p_lem.add_argument("--trials", type=int, default=100000)
    p_lem.add_argument("--seed", type=int, default=42)
    p_lem.add_argument("--conjecture", action="store_true",
                       help="allow exponents beyond {1, 2}")
    p_lem.set_defaults(func=cmd_lemmas)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return EXIT_IO
    except IsoratioError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_HYPOTHESIS


def entrypoint() -> None:
    raise SystemExit(main())
