"""Uniform-stream layer: exact polynomial identities, quadratures, Froude."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stokesbranch import (
    FlowRegime,
    VorticitySpec,
    bernoulli_r,
    critical_point,
    depth,
    froude_condition,
    omega_integral,
    s_floor,
    stream_from_bernoulli,
    stream_profile,
)

ZERO = VorticitySpec.zero()
ONE = VorticitySpec.constant(1.0)


# -- vorticity spec ----------------------------------------------------------


def test_omega_integral_examples():
    assert omega_integral(ZERO, 1.0) == 0.0
    assert omega_integral(ONE, 0.5) == 0.5
    assert omega_integral(VorticitySpec((0.0, 1.0)), 1.0) == 0.5


def test_omega_integral_zero_at_origin_is_exact():
    vort = VorticitySpec((0.7, -1.3, 2.9, 0.11))
    assert omega_integral(vort, 0.0) == 0.0


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
        min_size=1,
        max_size=5,
    ),
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
)
def test_omega_integral_derivative_identity(coeffs, p):
    """d(Omega)/dp equals omega pointwise: exact polynomial identity."""
    vort = VorticitySpec(tuple(coeffs))
    deriv = vort._poly_integral.deriv()
    assert float(deriv(p)) == pytest.approx(float(vort.omega(p)), abs=1e-12, rel=1e-12)
    assert vort.s_floor() >= 0.0


def test_s_floor_examples():
    assert s_floor(ZERO) == 0.0
    assert s_floor(ONE) == pytest.approx(2.0, abs=1e-14)
    assert s_floor(VorticitySpec.constant(-1.0)) == 0.0


def test_s_floor_interior_maximum():
    # omega = 1 - 2p: Omega = p - p^2 peaks at p = 1/2 with value 1/4
    vort = VorticitySpec((1.0, -2.0))
    assert vort.s_floor() == pytest.approx(1.0, abs=1e-13)


def test_vorticity_spec_rejects_nonfinite():
    with pytest.raises(ValueError):
        VorticitySpec((math.nan,))


# -- depth and Bernoulli -----------------------------------------------------


def test_depth_examples():
    assert depth(ZERO, 2.0) == pytest.approx(0.5, abs=1e-12)
    assert depth(ZERO, 1.0) == pytest.approx(1.0, abs=1e-12)
    # constant vorticity 1: antiderivative -sqrt(4 - 2 tau) gives 2 - sqrt(2)
    assert depth(ONE, 2.0) == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-10)


def test_depth_rejects_subcritical_shear():
    with pytest.raises(ValueError):
        depth(ONE, 2.0 - 1e-12)
    with pytest.raises(ValueError):
        depth(ONE, 1.0)
    with pytest.raises(ValueError):
        depth(ZERO, 1e-6)  # radicand below the near-critical guard


def test_bernoulli_examples():
    assert bernoulli_r(ZERO, 1.0) == pytest.approx(1.5, abs=1e-10)
    assert bernoulli_r(ZERO, 2.0) == pytest.approx(2.5, abs=1e-10)
    assert bernoulli_r(ONE, 2.0) == pytest.approx(
        2.0 + (2.0 - math.sqrt(2.0)) - 1.0, abs=1e-10
    )


def _midpoint_depth(vort: VorticitySpec, s: float, n: int = 1_000_000) -> float:
    """Brute-force composite-midpoint depth, independent of the library path."""
    p = (np.arange(n) + 0.5) / n
    return float(np.mean(1.0 / np.sqrt(s * s - 2.0 * vort.omega_integral(p))))


@pytest.mark.parametrize(
    "coeffs,s",
    [
        ((0.0,), 0.8),
        ((1.0,), 2.3),
        ((0.3, -0.2), 1.1),
        ((0.25, -0.3, 0.0, 0.1), 1.05),
    ],
)
def test_depth_quadrature_against_midpoint_bruteforce(coeffs, s):
    vort = VorticitySpec(coeffs)
    d = depth(vort, s)
    assert d == pytest.approx(_midpoint_depth(vort, s), rel=1e-8)


def test_depth_monotone_in_shear():
    for coeffs in [(0.0,), (0.4, -0.3), (-0.5,)]:
        vort = VorticitySpec(coeffs)
        lo = vort.s_floor() + 0.2
        values = [depth(vort, s) for s in np.linspace(lo, lo + 3.0, 12)]
        assert all(a > b for a, b in zip(values, values[1:]))


# -- critical point ----------------------------------------------------------


def test_critical_point_irrotational():
    crit = critical_point(ZERO)
    assert crit.s_c == pytest.approx(1.0, abs=1e-8)
    assert crit.r_c == pytest.approx(1.5, abs=1e-10)
    assert math.isinf(crit.r_0)


def test_critical_point_first_order_condition():
    crit = critical_point(ZERO)
    h = 1e-5
    slope = (bernoulli_r(ZERO, crit.s_c + h) - bernoulli_r(ZERO, crit.s_c - h)) / (2 * h)
    assert abs(slope) < 1e-6


def test_critical_point_against_grid_oracle():
    """Constant vorticity 0.1: independent dense-grid + Simpson oracle."""
    vort = VorticitySpec.constant(0.1)

    def depth_simpson(s, n=20001):
        p = np.linspace(0.0, 1.0, n)
        f = 1.0 / np.sqrt(s * s - 2.0 * vort.omega_integral(p))
        h = p[1] - p[0]
        return h / 3.0 * (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum())

    s0 = vort.s_floor()
    grid = np.linspace(s0 + 1e-3, s0 + 3.0, 4001)
    r_vals = np.array([0.5 * s * s + depth_simpson(s) - 0.1 for s in grid])
    k = int(np.argmin(r_vals))
    # refine with three-point bisection on the finite-difference slope
    lo, hi = grid[k - 1], grid[k + 1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        h = 1e-7
        slope = (
            0.5 * (mid + h) ** 2
            + depth_simpson(mid + h)
            - (0.5 * (mid - h) ** 2 + depth_simpson(mid - h))
        ) / (2 * h)
        if slope > 0:
            hi = mid
        else:
            lo = mid
    s_c_oracle = 0.5 * (lo + hi)

    crit = critical_point(vort)
    assert crit.s_c == pytest.approx(s_c_oracle, abs=1e-6)
    assert crit.r_c == pytest.approx(
        0.5 * s_c_oracle**2 + depth_simpson(s_c_oracle) - 0.1, abs=1e-7
    )


def test_bernoulli_at_floor_finite_for_negative_vorticity():
    # omega = -1: radicand 2p at s_floor = 0 is integrable, depth sqrt(2)
    crit = critical_point(VorticitySpec.constant(-1.0))
    assert crit.r_0 == pytest.approx(1.0 + math.sqrt(2.0), abs=1e-6)


# -- stream profiles ---------------------------------------------------------


def test_stream_profile_linear_case(make_stream):
    sol = make_stream((0.0,), 1.0)
    assert sol.d == pytest.approx(1.0, abs=1e-12)
    assert sol.kappa == pytest.approx(1.0, abs=1e-14)
    assert sol.froude == pytest.approx(1.0, abs=1e-12)
    y = np.linspace(0.0, 1.0, 17)
    assert np.max(np.abs(sol.u(y) - y)) < 1e-12


def test_stream_profile_froude_formulas_agree(make_stream):
    sol = make_stream((0.0,), 2.0)
    assert sol.d == pytest.approx(0.5, abs=1e-12)
    assert sol.froude == pytest.approx(2.0**1.5, rel=1e-10)
    assert sol.froude == pytest.approx(sol.d ** (-1.5), rel=1e-10)
    assert sol.froude == pytest.approx(sol.froude_physical(), rel=1e-7)


@pytest.mark.parametrize("name", ["linear", "cubic", "negative"])
def test_stream_profile_invariants(name, vortical_shear, make_stream):
    coeffs, s = vortical_shear[name]
    sol = make_stream(coeffs, s)
    vort = sol.vort
    # strict monotonicity and boundary interpolation of U
    assert np.all(np.diff(sol.h_samples) > 0)
    assert float(sol.u(0.0)) == pytest.approx(0.0, abs=1e-13)
    assert float(sol.u(sol.d)) == pytest.approx(1.0, abs=1e-13)
    # radicand positivity over the whole p-range
    p = np.linspace(0.0, 1.0, 501)
    assert np.min(s**2 - 2.0 * vort.omega_integral(p)) > 0.0
    # Bernoulli closure 0.5*kappa^2 + d = R - ... with Omega(1) folded in
    assert 0.5 * sol.kappa**2 + sol.d == pytest.approx(
        sol.bernoulli + float(vort.omega_integral(1.0)), rel=1e-12
    )
    # U and H are mutual inverses on the sampled grid
    psub = p[1:-1:25]
    assert np.max(np.abs(sol.u(sol.h(psub)) - psub)) < 1e-9
    # height profile solves H_pp = omega * H_p^3 (4th-order differences)
    h = 1e-3
    stencil = np.array([-1.0, 8.0, 0.0, -8.0, 1.0]) / (12.0 * h)
    for pt in np.linspace(0.1, 0.9, 7):
        pts = pt + h * np.array([2.0, 1.0, 0.0, -1.0, -2.0])
        dhp = float(stencil @ sol.hp(pts))
        assert dhp == pytest.approx(float(sol.hpp(pt)), abs=1e-8, rel=1e-8)
    # the two Froude routes agree
    assert sol.froude == pytest.approx(sol.froude_physical(), rel=1e-7)


@pytest.mark.parametrize("name", ["linear", "negative"])
def test_froude_identity_from_depth_slope(name, vortical_shear):
    """1/F^2 = -d'(s)/s and R'(s) = s(1 - F^-2), slopes by central differences."""
    coeffs, s = vortical_shear[name]
    vort = VorticitySpec(coeffs)
    sol = stream_profile(vort, s, n=301)
    h = 1e-5
    d_slope = (depth(vort, s + h) - depth(vort, s - h)) / (2 * h)
    assert -d_slope / s == pytest.approx(1.0 / sol.froude**2, rel=1e-6)
    r_slope = (bernoulli_r(vort, s + h) - bernoulli_r(vort, s - h)) / (2 * h)
    assert r_slope == pytest.approx(s * (1.0 - sol.froude**-2), rel=1e-6, abs=1e-8)


def test_stream_from_bernoulli_picks_subcritical_branch():
    sol = stream_from_bernoulli(ZERO, 2.0)
    assert sol.bernoulli == pytest.approx(2.0, rel=1e-9)
    assert sol.froude < 1.0
    # d is the larger conjugate depth: 1/d^2 + 2d = 4
    assert 1.0 / sol.d**2 + 2.0 * sol.d == pytest.approx(4.0, rel=1e-9)
    assert sol.d > 1.0


def test_froude_condition_examples(make_stream):
    assert froude_condition(make_stream((0.0,), 0.8)) is FlowRegime.SUBCRITICAL_WAVES_EXIST
    assert froude_condition(make_stream((0.0,), 1.0)) is FlowRegime.SUPERCRITICAL
    assert froude_condition(make_stream((0.0,), 2.0)) is FlowRegime.SUPERCRITICAL
