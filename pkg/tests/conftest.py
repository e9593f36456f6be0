"""Shared fixtures: cached streams and full second-order pipelines."""

from __future__ import annotations

import numpy as np
import pytest

from stokesbranch import (
    VorticitySpec,
    critical_point,
    nu,
    second_order_pipeline,
    stream_profile,
    tau_star,
)

# vortical battery used across test modules: (coefficients, shear fraction),
# shear chosen as s_floor + fraction * (s_c - s_floor) to stay subcritical
VORTICAL_CASES = {
    "linear": ((0.3, -0.2), 0.6),
    "cubic": ((0.25, -0.3, 0.0, 0.1), 0.55),
    "negative": ((-0.4,), 0.5),
}

_STREAMS: dict = {}
_PIPELINES: dict = {}


def _stream_key(coeffs, s, n):
    return (tuple(float(c) for c in coeffs), float(s), int(n))


@pytest.fixture(scope="session")
def make_stream():
    def build(coeffs, s, n=2001):
        key = _stream_key(coeffs, s, n)
        if key not in _STREAMS:
            _STREAMS[key] = stream_profile(VorticitySpec(tuple(coeffs)), s, n=n)
        return _STREAMS[key]

    return build


@pytest.fixture(scope="session")
def make_pipeline(make_stream):
    """Full chain (stream, dispersion, modes, second-order result), cached."""

    def build(coeffs, s, n=2001):
        key = _stream_key(coeffs, s, n)
        if key not in _PIPELINES:
            sol = make_stream(coeffs, s, n)
            disp = tau_star(sol)
            modes, result = second_order_pipeline(sol, disp)
            _PIPELINES[key] = {
                "sol": sol,
                "disp": disp,
                "modes": modes,
                "result": result,
            }
        return _PIPELINES[key]

    return build


@pytest.fixture(scope="session")
def vortical_shear():
    """Deterministic subcritical shear values for the vortical battery."""
    values = {}
    for name, (coeffs, fraction) in VORTICAL_CASES.items():
        vort = VorticitySpec(coeffs)
        crit = critical_point(vort)
        s0 = vort.s_floor()
        values[name] = (coeffs, s0 + fraction * (crit.s_c - s0))
    return values


@pytest.fixture(scope="session")
def scaled_case(make_pipeline):
    """Zero-vorticity pipeline indexed by the depth-scaled frequency T.

    theta = nu(T) fixes the subcritical conjugate depth d = theta^(1/3) and
    the stream has shear s = 1/d; the physical dispersion root then equals
    T / d.
    """

    def build(T):
        theta = float(nu(T))
        s = theta ** (-1.0 / 3.0)
        case = make_pipeline((0.0,), s)
        assert abs(case["disp"].tau_star * theta ** (1.0 / 3.0) - T) < 1e-8
        return case

    return build


@pytest.fixture()
def rng():
    return np.random.default_rng(20260809)
