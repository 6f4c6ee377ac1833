import math

import numpy as np
import pytest

import isoratio as ir


@pytest.fixture(scope="session")
def exp_surface():
    return ir.SurfaceOfRevolution(ir.ExpCusp(), n=1)


@pytest.fixture(scope="session")
def gauss_surface():
    return ir.SurfaceOfRevolution(ir.GaussianCusp(), n=1)


@pytest.fixture(scope="session")
def exp2_surface():
    """Exponential cusp with tail rate 2."""
    return ir.SurfaceOfRevolution(ir.ExpCusp(rate=2.0), n=1)


def tabulated_surface(shape, t_end, alpha, n_knots=61, n=1):
    """Surface from knots sampled off a closed-form shape, extended by an
    exponential tail of the given rate."""
    ts = np.linspace(0.0, t_end, n_knots)
    fs = shape(ts)
    fs[0] = 0.0
    M = float(fs[-1]) * math.exp(alpha * t_end) * 1.0000001
    warping = ir.TabulatedWarping(
        list(zip(ts, fs)), ir.DecayBound(M=M, alpha=alpha, T0=t_end))
    return ir.SurfaceOfRevolution(warping, n=n)
