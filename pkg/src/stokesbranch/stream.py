"""Uniform shear streams below a flat surface.

The background flow is a unidirectional stream U(Y) on a strip of depth d
driven by a polynomial vorticity function omega(p).  Everything here is a
function of the surface-shear parameter s = U'(0):

    Y(U) = int_0^U dt / sqrt(s^2 - 2*Omega(t)),   Omega(t) = int_0^t omega,

so the depth is d(s) = Y(1), the Bernoulli constant is
R(s) = s^2/2 + d(s) - Omega(1), and the Froude number comes from
1/F^2 = int_0^1 H_p^3 dp with H the inverse profile of U on the unit
p-interval (H_p = 1/sqrt(s^2 - 2*Omega(p)) exactly).

Vorticity functions are restricted to polynomials so that omega', Omega and
all radicands are evaluated exactly, without auxiliary quadrature error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate, interpolate, optimize

from .errors import NoMinimumError

__all__ = [
    "VorticitySpec",
    "StreamSolution",
    "CriticalPoint",
    "FlowRegime",
    "omega_integral",
    "s_floor",
    "depth",
    "bernoulli_r",
    "critical_point",
    "stream_profile",
    "stream_from_bernoulli",
    "froude_condition",
]

#: reject radicands s^2 - 2*max(Omega) below this (integrand turns singular)
RADICAND_FLOOR = 1e-8

#: absolute/relative tolerance for the adaptive quadratures in this module
QUAD_TOL = 1e-10

DEFAULT_GRID = 2001


@dataclass(frozen=True)
class VorticitySpec:
    """Polynomial vorticity function omega(p) on [0, 1].

    ``coefficients`` are monomial coefficients (c0, c1, ...), i.e.
    omega(p) = c0 + c1*p + c2*p^2 + ...  The antiderivative Omega and the
    derivative omega' are exact polynomial operations, so Omega(0) = 0
    holds identically.
    """

    coefficients: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs:
            coeffs = (0.0,)
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("vorticity coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls) -> "VorticitySpec":
        return cls((0.0,))

    @classmethod
    def constant(cls, value: float) -> "VorticitySpec":
        return cls((float(value),))

    @cached_property
    def _poly(self) -> Polynomial:
        return Polynomial(self.coefficients)

    @cached_property
    def _poly_prime(self) -> Polynomial:
        return self._poly.deriv()

    @cached_property
    def _poly_integral(self) -> Polynomial:
        # integration constant 0 => Omega(0) = 0 exactly
        return self._poly.integ()

    def omega(self, p):
        return self._poly(p)

    def omega_prime(self, p):
        return self._poly_prime(p)

    def omega_integral(self, p):
        return self._poly_integral(p)

    @cached_property
    def _omega_integral_max(self) -> tuple[float, tuple[float, ...]]:
        """Max of Omega over [0, 1] and the points where it is attained.

        Interior critical points are the real roots of omega = Omega' in
        (0, 1); the endpoints are always candidates.
        """
        candidates = [0.0, 1.0]
        if self._poly.degree() > 0 or self.coefficients[0] != 0.0:
            roots = self._poly.roots()
            for r in roots:
                if abs(r.imag) < 1e-12 and -1e-12 < r.real < 1.0 + 1e-12:
                    candidates.append(float(min(max(r.real, 0.0), 1.0)))
        values = [float(self._poly_integral(c)) for c in candidates]
        vmax = max(values)
        argmax = tuple(
            c for c, v in zip(candidates, values) if v >= vmax - 1e-13 * (1.0 + abs(vmax))
        )
        return vmax, argmax

    def omega_integral_max(self) -> float:
        return self._omega_integral_max[0]

    def s_floor(self) -> float:
        """Lower admissible bound 2*sqrt(max Omega) for the shear parameter."""
        return 2.0 * math.sqrt(max(self.omega_integral_max(), 0.0))


def omega_integral(vort: VorticitySpec, tau: float) -> float:
    """Omega(tau), by exact polynomial antidifferentiation."""
    return float(vort.omega_integral(tau))


def s_floor(vort: VorticitySpec) -> float:
    return vort.s_floor()


def _check_shear(vort: VorticitySpec, s: float) -> None:
    s0 = vort.s_floor()
    if not s > s0:
        raise ValueError(f"shear parameter s={s:.6g} must exceed s_floor={s0:.6g}")
    if s * s - 2.0 * vort.omega_integral_max() < RADICAND_FLOOR:
        raise ValueError(
            f"s={s:.6g} too close to critical shear: radicand below {RADICAND_FLOOR:g}"
        )


def _radicand(vort: VorticitySpec, s: float):
    def rad(p):
        return s * s - 2.0 * vort.omega_integral(p)

    return rad


def depth(vort: VorticitySpec, s: float) -> float:
    """Stream depth d(s) = int_0^1 dp / sqrt(s^2 - 2*Omega(p))."""
    _check_shear(vort, s)
    rad = _radicand(vort, s)
    val, _ = integrate.quad(
        lambda p: 1.0 / math.sqrt(rad(p)), 0.0, 1.0, epsabs=QUAD_TOL, epsrel=QUAD_TOL
    )
    return float(val)


def bernoulli_r(vort: VorticitySpec, s: float) -> float:
    """Bernoulli constant R(s) = s^2/2 + d(s) - Omega(1)."""
    return 0.5 * s * s + depth(vort, s) - float(vort.omega_integral(1.0))


@dataclass(frozen=True)
class CriticalPoint:
    """Minimizer data of the Bernoulli function R(s) on (s_floor, inf)."""

    s_c: float
    r_c: float
    r_0: float  # limit of R at s_floor from the right, may be +inf


def _bernoulli_at_floor(vort: VorticitySpec) -> float:
    """R(s_floor+), i.e. the right limit of the Bernoulli function.

    The radicand at s = s_floor is 4*maxOmega - 2*Omega(p) >= 2*maxOmega, so
    it only vanishes where Omega attains its maximum AND maxOmega = 0.  The
    depth integral stays finite exactly when every maximizer is an endpoint
    approached with nonzero slope (omega != 0 there); a maximizer interior
    to (0,1), or a flat touch, makes 1/sqrt(radicand) non-integrable.
    """
    s0 = vort.s_floor()
    vmax, argmax = vort._omega_integral_max
    if vmax > 0.25 * RADICAND_FLOOR:
        # radicand bounded below by 2*vmax > 0: plain proper integral
        rad = _radicand(vort, s0)
        val, _ = integrate.quad(
            lambda p: 1.0 / math.sqrt(rad(p)), 0.0, 1.0, epsabs=QUAD_TOL, epsrel=QUAD_TOL
        )
        return 0.5 * s0 * s0 + float(val) - float(vort.omega_integral(1.0))
    # s0 = 0: radicand -2*Omega vanishes at every maximizer of Omega
    for point in argmax:
        interior = 1e-9 < point < 1.0 - 1e-9
        if interior or abs(float(vort.omega(point))) < 1e-9:
            return math.inf
    rad = _radicand(vort, s0)
    val, err = integrate.quad(
        lambda p: 1.0 / math.sqrt(max(rad(p), 0.0)),
        0.0,
        1.0,
        points=[p for p in argmax],
        limit=200,
        epsabs=1e-9,
        epsrel=1e-9,
    )
    if not math.isfinite(val) or err > 1e-5 * (1.0 + abs(val)):
        return math.inf
    return 0.5 * s0 * s0 + float(val) - float(vort.omega_integral(1.0))


def critical_point(vort: VorticitySpec, window: float = 50.0) -> CriticalPoint:
    """Locate the interior minimum of the Bernoulli function R(s).

    A coarse scan over [s_floor + 1e-4, s_floor + window] brackets a local
    minimum, which bounded golden/parabolic refinement then sharpens to
    1e-10.  Raises NoMinimumError when no interior bracket exists.
    """
    s0 = vort.s_floor()
    lo = s0 + 1e-4
    if lo * lo - 2.0 * vort.omega_integral_max() < RADICAND_FLOOR:
        lo = math.sqrt(2.0 * vort.omega_integral_max() + 2.0 * RADICAND_FLOOR)
    hi = s0 + window

    def r_of_s(s):
        return bernoulli_r(vort, s)

    for _ in range(8):
        grid = np.linspace(lo, hi, 400)
        values = np.array([r_of_s(s) for s in grid])
        k = int(np.argmin(values))
        if 0 < k < len(grid) - 1:
            bracket = (grid[k - 1], grid[k + 1])
            break
        if k == 0:
            # minimum pushed against the near-critical edge: zoom in
            hi = grid[2]
            if hi - lo < 1e-9:
                raise NoMinimumError(
                    "Bernoulli function appears monotone up to the critical shear"
                )
        else:
            hi = s0 + (hi - s0) * 2.0
            if hi - s0 > 1e6:
                raise NoMinimumError("no interior minimum of R(s) within scan window")
    else:
        raise NoMinimumError("bracketing the minimum of R(s) failed")

    res = optimize.minimize_scalar(
        r_of_s, bounds=bracket, method="bounded", options={"xatol": 1e-10}
    )
    if not res.success:
        raise NoMinimumError(f"refinement of the R(s) minimum failed: {res.message}")
    s_c = float(res.x)
    return CriticalPoint(s_c=s_c, r_c=float(res.fun), r_0=_bernoulli_at_floor(vort))


def _cumulative_gauss(fvals_builder: Callable, grid: np.ndarray, order: int = 10) -> np.ndarray:
    """Cumulative integral of a smooth function over a fine grid.

    Per-cell Gauss-Legendre of fixed order, accumulated; the integrand is
    evaluated vectorized on all cells at once.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)
    a = grid[:-1]
    h = np.diff(grid)
    # map nodes from [-1,1] into every cell
    pts = a[:, None] + 0.5 * h[:, None] * (nodes[None, :] + 1.0)
    vals = fvals_builder(pts)
    cells = 0.5 * h * (vals * weights[None, :]).sum(axis=1)
    out = np.empty(grid.shape)
    out[0] = 0.0
    np.cumsum(cells, out=out[1:])
    return out


@dataclass(eq=False)
class StreamSolution:
    """One uniform stream: profile samples plus exact coefficient evaluators.

    ``grid_p`` is a uniform grid of the stream-function variable p in [0,1];
    ``h_samples`` carries the height profile H(p) (so ``grid_y = h_samples``
    and ``u_samples = grid_p`` sample the inverse profile U(Y) on [0, d]).
    H_p is always evaluated from the exact radicand, never by differencing.
    """

    vort: VorticitySpec
    s: float
    d: float
    bernoulli: float
    kappa: float
    froude: float
    grid_p: np.ndarray
    h_samples: np.ndarray
    hp_samples: np.ndarray
    _h_interp: interpolate.CubicHermiteSpline = field(repr=False)
    _u_interp: interpolate.PchipInterpolator = field(repr=False)

    @property
    def grid_y(self) -> np.ndarray:
        return self.h_samples

    @property
    def u_samples(self) -> np.ndarray:
        return self.grid_p

    # -- exact hodograph-side evaluators ------------------------------------
    def hp(self, p):
        """H_p(p) = 1/sqrt(s^2 - 2*Omega(p)), exact."""
        return 1.0 / np.sqrt(self.s**2 - 2.0 * self.vort.omega_integral(p))

    def hpp(self, p):
        """H_pp = omega(p) * H_p^3, exact."""
        return self.vort.omega(p) * self.hp(p) ** 3

    def h(self, p):
        """Height profile H(p), cubic Hermite interpolant with exact slopes."""
        return self._h_interp(p)

    # -- physical-side evaluators --------------------------------------------
    def u(self, y):
        """U(Y): monotone cubic interpolation of the inverse of H."""
        return np.clip(self._u_interp(np.clip(y, 0.0, self.d)), 0.0, 1.0)

    def u_prime(self, y):
        """U'(Y) = sqrt(s^2 - 2*Omega(U(Y))), exact composition."""
        return np.sqrt(self.s**2 - 2.0 * self.vort.omega_integral(self.u(y)))

    def u_second(self, y):
        """U''(Y) = -omega(U(Y))."""
        return -self.vort.omega(self.u(y))

    def rho0(self) -> float:
        """Robin coefficient (1 + U'(d) U''(d)) / U'(d)^2 of the surface condition."""
        kappa = self.kappa
        return 1.0 / kappa**2 - float(self.vort.omega(1.0)) / kappa

    def froude_physical(self) -> float:
        """Froude number from the physical-plane integral int_0^d dY/U'(Y)^2.

        Kept as an independent route; the constructor computes ``froude``
        from the p-integral of H_p^3.
        """
        val, _ = integrate.quad(
            lambda y: 1.0 / float(self.u_prime(y)) ** 2,
            0.0,
            self.d,
            epsabs=QUAD_TOL,
            epsrel=QUAD_TOL,
            limit=200,
        )
        return 1.0 / math.sqrt(val)


def stream_profile(vort: VorticitySpec, s: float, n: int = DEFAULT_GRID) -> StreamSolution:
    """Solve the uniform-stream problem for shear parameter s.

    H is accumulated by per-cell Gauss quadrature on a uniform p-grid;
    U(Y) is the monotone cubic interpolation of the inverse.  kappa and the
    Froude number follow from kappa = sqrt(s^2 - 2*Omega(1)) and
    1/F^2 = int_0^1 H_p^3 dp.
    """
    _check_shear(vort, s)
    if n < 9:
        raise ValueError("grid size too small")
    grid_p = np.linspace(0.0, 1.0, n)
    s2 = s * s

    def hp_of(p):
        return 1.0 / np.sqrt(s2 - 2.0 * vort.omega_integral(p))

    hp_samples = hp_of(grid_p)
    h_samples = _cumulative_gauss(hp_of, grid_p)
    d_grid = float(h_samples[-1])
    d_quad = depth(vort, s)
    if abs(d_grid - d_quad) > 1e-8 * (1.0 + abs(d_quad)):
        raise ArithmeticError(
            f"depth mismatch between grid accumulation ({d_grid!r}) "
            f"and adaptive quadrature ({d_quad!r})"
        )
    kappa = math.sqrt(s2 - 2.0 * float(vort.omega_integral(1.0)))
    inv_f2, _ = integrate.quad(
        lambda p: float(hp_of(p)) ** 3, 0.0, 1.0, epsabs=QUAD_TOL, epsrel=QUAD_TOL
    )
    froude = 1.0 / math.sqrt(inv_f2)
    h_interp = interpolate.CubicHermiteSpline(grid_p, h_samples, hp_samples)
    u_interp = interpolate.PchipInterpolator(h_samples, grid_p)
    return StreamSolution(
        vort=vort,
        s=float(s),
        d=d_grid,
        bernoulli=0.5 * s2 + d_grid - float(vort.omega_integral(1.0)),
        kappa=kappa,
        froude=froude,
        grid_p=grid_p,
        h_samples=h_samples,
        hp_samples=hp_samples,
        _h_interp=h_interp,
        _u_interp=u_interp,
    )


def stream_from_bernoulli(
    vort: VorticitySpec, r: float, n: int = DEFAULT_GRID
) -> StreamSolution:
    """Build the wave-bearing (subcritical) stream with Bernoulli constant r.

    R(s) = r has two roots when R_c < r < R_0; the one below the critical
    shear s_c carries Froude number < 1 and is the stream the small-wave
    analysis bifurcates from.  That root is returned here.
    """
    crit = critical_point(vort)
    if not r > crit.r_c:
        raise NoMinimumError(
            f"R={r:.6g} not above the critical value R_c={crit.r_c:.6g}"
        )
    s0 = vort.s_floor()
    lo = s0 + 1e-4
    if lo * lo - 2.0 * vort.omega_integral_max() < RADICAND_FLOOR:
        lo = math.sqrt(2.0 * vort.omega_integral_max() + 2.0 * RADICAND_FLOOR)

    def gap(s):
        return bernoulli_r(vort, s) - r

    g_lo = gap(lo)
    if g_lo < 0.0:
        raise NoMinimumError(
            f"R={r:.6g} exceeds the near-critical limit R_0; no subcritical root"
        )
    s_sub = optimize.brentq(gap, lo, crit.s_c, xtol=1e-12, rtol=8.9e-16)
    return stream_profile(vort, float(s_sub), n=n)


class FlowRegime(Enum):
    SUBCRITICAL_WAVES_EXIST = "subcritical_waves_exist"
    SUPERCRITICAL = "supercritical"


def froude_condition(sol: StreamSolution) -> FlowRegime:
    """Small-amplitude wave verdict: F < 1 (strictly) admits Stokes waves."""
    if sol.froude < 1.0:
        return FlowRegime.SUBCRITICAL_WAVES_EXIST
    return FlowRegime.SUPERCRITICAL
