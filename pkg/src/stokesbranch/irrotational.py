"""Closed-form branch coefficients for zero vorticity.

After rescaling lengths by the subcritical conjugate depth, the flow on a
unit strip depends on the single parameter theta = d_plus^3 > 1, and the
frequency of the bifurcating wave solves nu(tau) = theta with
nu(tau) = tau coth(tau).  The whole second-order system then collapses to
explicit hyperbolic expressions: coefficients (alpha1, beta1, alpha2,
beta2) of the stream-function and surface corrections, the solvability
function f(tau) of the third order, the wavelength curvature lambda2, the
root tau0 of f, and the Froude-number window on which the subharmonic
bifurcation assumption holds.

The conjugate Froude number enters through
theta = ((F + sqrt(F^2 + 8)) / 4)^3 * F, strictly increasing in F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import NoBracketError, NoRootError, NoTwoRootsError

__all__ = [
    "IrrotationalChain",
    "AssumptionWindow",
    "nu",
    "depths_from_r",
    "theta_from_froude",
    "froude_from_theta",
    "tau_from_theta",
    "second_order_coeffs",
    "f_eval",
    "lambda2_irrotational",
    "tau0_root",
    "froude_threshold",
    "assumption_window",
    "expansion_residual",
    "chain",
]

#: below this frequency the mean-flow coefficient beta1 degenerates (theta -> 1)
TAU_MIN = 0.05

#: numerical upper bound on the solitary-wave Froude number (literature
#: value, quoted, never recomputed here)
SOLITARY_FROUDE_BOUND = 1.29

ROOT_TOL = 1e-10
SCAN_POINTS = 512


def nu(tau):
    """nu(tau) = tau * coth(tau), continued by nu(0) = 1."""
    t = np.asarray(tau, dtype=float)
    out = np.ones_like(t)
    nz = t != 0.0
    out[nz] = t[nz] / np.tanh(t[nz])
    return out[()] if np.isscalar(tau) else out


def depths_from_r(r: float) -> tuple[float, float]:
    """Both conjugate depths: roots of 1/d^2 + 2d = 2R.

    Bracketed bisection returns (d_minus, d_plus) with
    0 < d_minus < 1 < d_plus.  Raises NoTwoRootsError for R <= 3/2 (the
    double root d = 1 at the critical Bernoulli constant).
    """
    if not r > 1.5:
        raise NoTwoRootsError(f"R={r:.6g} <= 3/2: conjugate depth pair does not exist")

    def gap(d):
        return 1.0 / (d * d) + 2.0 * d - 2.0 * r

    # gap(0+) = +inf, gap(1) = 3 - 2R < 0, gap(R) > 0
    d_minus = optimize.brentq(gap, 1e-12, 1.0, xtol=1e-14, rtol=8.9e-16)
    d_plus = optimize.brentq(gap, 1.0, max(2.0 * r, 2.0), xtol=1e-14, rtol=8.9e-16)
    return float(d_minus), float(d_plus)


def theta_from_froude(froude: float) -> float:
    """theta = ((F + sqrt(F^2 + 8)) / 4)^3 * F for the conjugate Froude number."""
    if not froude > 0.0:
        raise ValueError("Froude number must be positive")
    return ((froude + math.sqrt(froude * froude + 8.0)) / 4.0) ** 3 * froude


def froude_from_theta(theta: float) -> float:
    """Invert the monotone Froude-to-theta map by Brent iteration."""
    if not theta >= 1.0:
        raise ValueError(f"theta={theta:.6g} must be >= 1")
    if theta == 1.0:
        return 1.0
    hi = 2.0
    while theta_from_froude(hi) < theta:
        hi *= 2.0
    return float(
        optimize.brentq(
            lambda f: theta_from_froude(f) - theta, 1e-8, hi, xtol=1e-12, rtol=8.9e-16
        )
    )


def tau_from_theta(theta: float) -> float:
    """Unique positive root of nu(tau) = theta (nu increases from nu(0+) = 1)."""
    if not theta > 1.0:
        raise NoRootError(f"nu(tau) = theta has no positive root for theta={theta:.6g} <= 1")
    hi = max(2.0, theta + 1.0)
    while float(nu(hi)) < theta:
        hi *= 2.0
    return float(
        optimize.brentq(
            lambda t: float(nu(t)) - theta, 1e-12, hi, xtol=ROOT_TOL, rtol=8.9e-16
        )
    )


def second_order_coeffs(tau: float) -> tuple[float, float, float, float]:
    """Closed-form (alpha1, beta1, alpha2, beta2) at frequency tau.

    The pair (beta1, beta2) comes from the eliminated forms of the
    surface system,

        2(theta - 1) beta1 + theta + (theta^2 - tau^2)/2 = 0,
        2(theta - nu(2 tau)) beta2 + theta nu(2 tau) + (theta^2 - 3 tau^2)/2 = 0,

    and (alpha1, alpha2) follow from the kinematic pair.  Denominators stay
    away from zero for tau > 0 since theta > 1 and nu(2 tau) > theta.
    """
    if not tau >= TAU_MIN:
        raise ValueError(f"tau={tau:.6g} below tau_min={TAU_MIN}: mean mode degenerates")
    theta = float(nu(tau))
    nu2 = float(nu(2.0 * tau))
    beta1 = -(theta + 0.5 * (theta * theta - tau * tau)) / (2.0 * (theta - 1.0))
    alpha1 = 0.5 * theta - beta1
    beta2 = -(theta * nu2 + 0.5 * (theta * theta - 3.0 * tau * tau)) / (
        2.0 * (theta - nu2)
    )
    alpha2 = (0.5 * theta - beta2) / math.sinh(2.0 * tau)
    return alpha1, beta1, alpha2, beta2


def f_eval(tau: float) -> float:
    """Solvability function of the third order; its sign controls lambda2.

    f(tau) = -(tau^2/sinh^2 tau)(beta1 + beta2/2) + 2 theta alpha1
             + alpha2 (2 theta tau cosh 2tau - tau^2 sinh 2tau) - theta tau^2.
    """
    alpha1, beta1, alpha2, beta2 = second_order_coeffs(tau)
    theta = float(nu(tau))
    sh = math.sinh(tau)
    return (
        -(tau * tau / (sh * sh)) * (beta1 + 0.5 * beta2)
        + 2.0 * theta * alpha1
        + alpha2 * (2.0 * theta * tau * math.cosh(2.0 * tau) - tau * tau * math.sinh(2.0 * tau))
        - theta * tau * tau
    )


def lambda2_irrotational(tau: float) -> float:
    """Wavelength curvature of the branch, normalized like the strip pipeline.

    lambda2 = -2 sinh^2(tau) f(tau) / (tau (sinh 2tau - 2 tau)).  The kernel
    pairing that produces this prefactor is fixed by the amplitude
    normalization eta = t cos(tau s) + O(t^2) of the scaled surface, which
    matches the kernel-mode normalization of the general pipeline.
    """
    sh = math.sinh(tau)
    return -2.0 * sh * sh * f_eval(tau) / (tau * (math.sinh(2.0 * tau) - 2.0 * tau))


def tau0_root(lo: float = 0.5, hi: float = 3.0) -> float:
    """Root of f on a bracket located by scanning [lo, hi]."""
    taus = np.linspace(lo, hi, SCAN_POINTS)
    values = np.array([f_eval(t) for t in taus])
    signs = np.sign(values)
    flips = np.nonzero(np.diff(signs) != 0)[0]
    if len(flips) == 0:
        raise NoBracketError(f"no sign change of f on [{lo}, {hi}]")
    k = flips[0]
    return float(
        optimize.brentq(f_eval, taus[k], taus[k + 1], xtol=ROOT_TOL, rtol=8.9e-16)
    )


def froude_threshold() -> float:
    """Conjugate Froude number F0 at which the second eigenvalue turns."""
    return froude_from_theta(float(nu(tau0_root())))


@dataclass(frozen=True)
class AssumptionWindow:
    """Froude interval on which exactly one sign change of mu(t) is forced.

    ``f_low`` is the quoted numerical solitary-wave bound; ``f_high`` is the
    computed threshold F0.  ``analytic_bound`` carries the rigorous
    solitary-wave bound sqrt(2), which is too large to be useful here
    (hence ``analytic_bound_sufficient`` is False).
    """

    f_low: float
    f_high: float
    analytic_bound: float
    analytic_bound_sufficient: bool

    def contains(self, froude: float) -> bool:
        return self.f_low < froude < self.f_high


def assumption_window() -> AssumptionWindow:
    f0 = froude_threshold()
    return AssumptionWindow(
        f_low=SOLITARY_FROUDE_BOUND,
        f_high=f0,
        analytic_bound=math.sqrt(2.0),
        analytic_bound_sufficient=math.sqrt(2.0) < f0,
    )


@dataclass(frozen=True)
class IrrotationalChain:
    """Everything the zero-vorticity chain produces at one frequency."""

    theta: float
    tau_star: float
    a: float
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    f_value: float
    lambda2: float
    froude: float


def chain(tau: float) -> IrrotationalChain:
    """Assemble the full coefficient chain at frequency tau."""
    alpha1, beta1, alpha2, beta2 = second_order_coeffs(tau)
    theta = float(nu(tau))
    return IrrotationalChain(
        theta=theta,
        tau_star=float(tau),
        a=-1.0 / math.sinh(tau),
        alpha1=alpha1,
        alpha2=alpha2,
        beta1=beta1,
        beta2=beta2,
        f_value=f_eval(tau),
        lambda2=lambda2_irrotational(tau),
        froude=froude_from_theta(theta),
    )


def expansion_residual(
    tau: float, t: float, n_s: int = 256, n_y: int = 64
) -> tuple[float, float, float]:
    """Max-norm residuals of the truncated second-order wave ansatz.

    Builds eta = t eta1 + t^2 eta2 and psi = 1 + y + t psi1 + t^2 psi2 with
    the closed-form profiles, sets lambda = 1 + lambda2 t^2, and evaluates
    the field equation (lambda^2 d_ss + d_yy) psi over the fluid region,
    the surface Bernoulli defect psi_y^2 + lambda^2 psi_s^2 + 2 theta eta - 1,
    and the surface value defect psi(s, eta) - 1, each over one period.
    All three must shrink like t^3 as the omitted third-order terms.
    """
    if not tau >= TAU_MIN:
        raise ValueError(f"tau={tau:.6g} below tau_min={TAU_MIN}")
    if not 0.0 <= t <= 0.1:
        raise ValueError("amplitude parameter t must lie in [0, 0.1]")
    alpha1, beta1, alpha2, beta2 = second_order_coeffs(tau)
    theta = float(nu(tau))
    a = -1.0 / math.sinh(tau)
    lam2 = lambda2_irrotational(tau)
    lam = 1.0 + lam2 * t * t
    period = 2.0 * math.pi / tau

    s = np.linspace(-0.5 * period, 0.5 * period, n_s)
    eta = t * np.cos(tau * s) + t * t * (beta1 + beta2 * np.cos(2.0 * tau * s))

    def psi_parts(ss, yy):
        """psi, psi_s, psi_y, psi_ss, psi_yy at broadcastable (ss, yy)."""
        c1, s1 = np.cos(tau * ss), np.sin(tau * ss)
        c2, s2 = np.cos(2.0 * tau * ss), np.sin(2.0 * tau * ss)
        sh1, ch1 = np.sinh(tau * (yy + 1.0)), np.cosh(tau * (yy + 1.0))
        sh2, ch2 = np.sinh(2.0 * tau * (yy + 1.0)), np.cosh(2.0 * tau * (yy + 1.0))
        p1 = a * c1 * sh1
        p2 = alpha1 * (yy + 1.0) + alpha2 * c2 * sh2
        psi = 1.0 + yy + t * p1 + t * t * p2
        psi_s = t * (-tau * a * s1 * sh1) + t * t * (-2.0 * tau * alpha2 * s2 * sh2)
        psi_y = 1.0 + t * (tau * a * c1 * ch1) + t * t * (
            alpha1 + 2.0 * tau * alpha2 * c2 * ch2
        )
        psi_ss = t * (-(tau**2) * a * c1 * sh1) + t * t * (
            -4.0 * tau**2 * alpha2 * c2 * sh2
        )
        psi_yy = t * (tau**2 * a * c1 * sh1) + t * t * (4.0 * tau**2 * alpha2 * c2 * sh2)
        return psi, psi_s, psi_y, psi_ss, psi_yy

    # field equation over the fluid region, column by column up to eta(s)
    frac = np.linspace(0.0, 1.0, n_y)[None, :]
    yy = -1.0 + (eta[:, None] + 1.0) * frac
    ss = np.broadcast_to(s[:, None], yy.shape)
    _, _, _, psi_ss, psi_yy = psi_parts(ss, yy)
    laplace_residual = float(np.max(np.abs(lam * lam * psi_ss + psi_yy)))

    psi, psi_s, psi_y, _, _ = psi_parts(s, eta)
    kinematic_residual = float(np.max(np.abs(psi - 1.0)))
    bernoulli_residual = float(
        np.max(np.abs(psi_y**2 + lam * lam * psi_s**2 + 2.0 * theta * eta - 1.0))
    )
    return laplace_residual, bernoulli_residual, kinematic_residual
