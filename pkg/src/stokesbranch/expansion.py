"""Second-order coefficients of the small-amplitude wave branch.

On the fixed strip (q, p) in (-L0/2, L0/2) x (0, 1) the branch of waves
bifurcating from a uniform stream expands through the kernel mode

    v0(q, p) = alpha0(p) cos(tau* q),   alpha0 = gamma(H(p); tau*) H_p,

and a second-order correction v1 = alpha1(p) + beta1(p) cos(2 tau* q) with
profile equations obtained by splitting the quadratic forcing into its
mean and double-frequency parts.  The solvability condition of the third
order fixes the wavelength curvature lambda2; the second eigenvalue
curvature mu2 then follows from

    -4 lambda2 I1 = mu2 I2,   I1 = int v0_q^2 / H_p,  I2 = int v0^2,

both integrals over one period of the strip.  All q-integrals reduce to
trigonometric moments and are done analytically; the p-integrals use
adaptive quadrature.  A uniform-trapezoid q-path is kept as an independent
cross-check of the trigonometric bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .bvp import BVPSolution, solve_mode
from .dispersion import DispersionResult
from .errors import DegenerateModeError
from .stream import StreamSolution

__all__ = [
    "KernelMode",
    "SecondOrderForcing",
    "ModeSet",
    "SecondOrderResult",
    "kernel_mode",
    "rhs_modes",
    "second_order_modes",
    "lambda2_general",
    "mu2_from_lambda2",
    "mu2_via_eigenvalue_expansion",
    "second_order_pipeline",
]

_QUAD_KW = dict(epsabs=1e-11, epsrel=1e-11, limit=200)


def _quad(f: Callable, a: float = 0.0, b: float = 1.0) -> float:
    val, _ = integrate.quad(f, a, b, **_QUAD_KW)
    return float(val)


@dataclass(eq=False)
class KernelMode:
    """Kernel profile alpha0(p) of the linearized strip operator at tau*."""

    p_grid: np.ndarray
    samples: np.ndarray
    tau_star: float
    value: Callable = field(repr=False)
    derivative: Callable = field(repr=False)
    second: Callable = field(repr=False)


def kernel_mode(sol: StreamSolution, disp: DispersionResult) -> KernelMode:
    """alpha0(p) = gamma(H(p); tau*) H_p(p) with exact chain-rule derivatives.

    alpha0' uses gamma' from the dispersion solve and H_pp = omega H_p^3;
    alpha0'' follows from the profile equation alpha0 satisfies, so no
    sample differencing enters.
    """
    tau = disp.tau_star
    gamma, gamma_p = disp.gamma, disp.gamma_prime
    hp, h = sol.hp, sol.h
    omega = sol.vort.omega

    def value(p):
        return gamma(h(p)) * hp(p)

    def derivative(p):
        w = hp(p)
        return gamma_p(h(p)) * w**2 + omega(p) * w**3 * gamma(h(p))

    def second(p):
        w = hp(p)
        return w * w * (3.0 * omega(p) * derivative(p) + tau * tau * value(p))

    return KernelMode(
        p_grid=sol.grid_p,
        samples=np.asarray(value(sol.grid_p)),
        tau_star=tau,
        value=value,
        derivative=derivative,
        second=second,
    )


@dataclass(eq=False)
class SecondOrderForcing:
    """Mean / double-frequency split of the quadratic forcing.

    The quadratic terms J2 = v0_q^2/(2 H_p^2) + (3/2) v0_p^2/H_p^4 and
    (v0_q v0_p / H_p^2)_q decompose via sin^2 = (1 - cos2)/2 and
    cos^2 = (1 + cos2)/2 into profiles S0 + S2 cos(2 tau* q); the per-mode
    interior forcings are

        f0 = -S0',      f2 = -S2' + tau*^2 alpha0 alpha0' / H_p^2,

    with Robin data c0 = -S0(1), c2 = -S2(1) at the surface.  S0' and S2'
    are evaluated by exact differentiation of the profile expressions.
    """

    f0: Callable = field(repr=False)
    f2: Callable = field(repr=False)
    c0: float = 0.0
    c2: float = 0.0
    s0_profile: Callable = field(default=None, repr=False)
    s2_profile: Callable = field(default=None, repr=False)
    tau_star: float = 0.0


def rhs_modes(mode: KernelMode, sol: StreamSolution) -> SecondOrderForcing:
    tau = mode.tau_star
    t2 = tau * tau
    a0, a0p, a0pp = mode.value, mode.derivative, mode.second
    hp = sol.hp
    omega = sol.vort.omega

    def s0(p):
        w = hp(p)
        return 0.25 * t2 * a0(p) ** 2 / w**2 + 0.75 * a0p(p) ** 2 / w**4

    def s2(p):
        w = hp(p)
        return -0.25 * t2 * a0(p) ** 2 / w**2 + 0.75 * a0p(p) ** 2 / w**4

    def even_part_prime(p):
        # d/dp of (3/4) a0'^2 / H_p^4
        w = hp(p)
        return 1.5 * (a0p(p) * a0pp(p) / w**4 - 2.0 * omega(p) * a0p(p) ** 2 / w**2)

    def odd_part_prime(p):
        # d/dp of (1/4) a0^2 / H_p^2
        w = hp(p)
        return 0.5 * (a0(p) * a0p(p) / w**2 - omega(p) * a0(p) ** 2)

    def f0(p):
        return -(t2 * odd_part_prime(p) + even_part_prime(p))

    def f2(p):
        w = hp(p)
        return t2 * odd_part_prime(p) - even_part_prime(p) + t2 * a0(p) * a0p(p) / w**2

    return SecondOrderForcing(
        f0=f0,
        f2=f2,
        c0=-float(s0(1.0)),
        c2=-float(s2(1.0)),
        s0_profile=s0,
        s2_profile=s2,
        tau_star=tau,
    )


@dataclass(eq=False)
class ModeSet:
    """Kernel and second-order profiles of the branch expansion."""

    p_grid: np.ndarray
    alpha0: np.ndarray
    alpha1: np.ndarray
    beta1: np.ndarray
    tau_star: float
    lambda0: float
    #: coefficient of the kernel direction removed from v1 (quadrature noise)
    kernel_projection: float
    alpha0_fn: Callable = field(repr=False)
    alpha0_prime_fn: Callable = field(repr=False)
    alpha1_fn: Callable = field(repr=False)
    alpha1_prime_fn: Callable = field(repr=False)
    beta1_fn: Callable = field(repr=False)
    beta1_prime_fn: Callable = field(repr=False)

    def first_order(self, q, p):
        """v0(q, p) on arrays broadcast against each other."""
        return self.alpha0_fn(p) * np.cos(self.tau_star * np.asarray(q))

    def second_order(self, q, p):
        """v1(q, p), orthogonalized against the kernel direction."""
        out = self.alpha1_fn(p) + self.beta1_fn(p) * np.cos(
            2.0 * self.tau_star * np.asarray(q)
        )
        if self.kernel_projection != 0.0:
            out = out - self.kernel_projection * self.first_order(q, p)
        return out


def second_order_modes(
    sol: StreamSolution,
    disp: DispersionResult,
    forcing: SecondOrderForcing,
    mode: KernelMode | None = None,
) -> ModeSet:
    """Solve the mean and double-frequency profile problems.

    The mean profile alpha1 solves the weighted problem at frequency 0 and
    the double-frequency profile beta1 at 2 tau*; both are uniquely
    solvable away from tau*, so NearResonanceError only fires on corrupted
    inputs.  The (analytically zero) kernel projection of the assembled v1
    is computed by quadrature, recorded, and subtracted.
    """
    if mode is None:
        mode = kernel_mode(sol, disp)
    tau = disp.tau_star
    alpha1_sol: BVPSolution = solve_mode(sol, 0.0, forcing.f0, forcing.c0)
    beta1_sol: BVPSolution = solve_mode(sol, 2.0 * tau, forcing.f2, forcing.c2)

    # L2(strip) projection of v1 on v0: only a cos(tau* q) component of v1
    # would survive the q-integral and v1 has none by construction, so this
    # is quadrature roundoff.  Computed, recorded, and removed anyway.
    n_q = 32
    qs = (np.arange(n_q) / n_q - 0.5) * disp.lambda0
    nodes, weights = np.polynomial.legendre.leggauss(64)
    pq = 0.5 * (nodes + 1.0)
    wq = 0.5 * weights
    v0_grid = np.cos(tau * qs)[:, None] * np.asarray(mode.value(pq))[None, :]
    v1_grid = (
        np.asarray(alpha1_sol.value(pq))[None, :]
        + np.cos(2.0 * tau * qs)[:, None] * np.asarray(beta1_sol.value(pq))[None, :]
    )
    projection = float(np.sum((v1_grid * v0_grid) @ wq) / np.sum((v0_grid**2) @ wq))

    return ModeSet(
        p_grid=sol.grid_p,
        alpha0=mode.samples,
        alpha1=np.asarray(alpha1_sol.value(sol.grid_p)),
        beta1=np.asarray(beta1_sol.value(sol.grid_p)),
        tau_star=tau,
        lambda0=disp.lambda0,
        kernel_projection=projection,
        alpha0_fn=mode.value,
        alpha0_prime_fn=mode.derivative,
        alpha1_fn=alpha1_sol.value,
        alpha1_prime_fn=alpha1_sol.derivative,
        beta1_fn=beta1_sol.value,
        beta1_prime_fn=beta1_sol.derivative,
    )


def _lambda2_numerator_profile(modes: ModeSet, sol: StreamSolution) -> Callable:
    """p-profile of the q-reduced solvability numerator."""
    t2 = modes.tau_star**2
    a0, a0p = modes.alpha0_fn, modes.alpha0_prime_fn
    a1p = modes.alpha1_prime_fn
    b1, b1p = modes.beta1_fn, modes.beta1_prime_fn
    hp = sol.hp

    def profile(p):
        w = hp(p)
        w2 = w * w
        return (
            t2 * a0(p) * a0p(p) * b1(p) / w2
            + 1.5 * a0p(p) ** 2 * a1p(p) / w2**2
            + 0.75 * a0p(p) ** 2 * b1p(p) / w2**2
            - 0.75 * a0p(p) ** 4 / w2**2 / w
            + 0.5 * t2 * a0(p) ** 2 * a1p(p) / w2
            - 0.25 * t2 * a0(p) ** 2 * b1p(p) / w2
            - 0.25 * t2 * a0(p) ** 2 * a0p(p) ** 2 / w2 / w
        )

    return profile


def lambda2_general(
    modes: ModeSet,
    sol: StreamSolution,
    q_points: int | None = None,
    kernel_shift: float = 0.0,
) -> float:
    """Wavelength curvature lambda2 from the third-order solvability condition.

    All q-integrals are removed analytically through trigonometric moments;
    passing ``q_points`` switches to a uniform-trapezoid q-rule on one
    period instead (the independent bookkeeping path; exact for the
    trigonometric polynomials involved).  ``kernel_shift`` adds that
    multiple of the kernel mode to v1 before integrating; the result must
    not depend on it.
    """
    i1_profile = _quad(lambda p: modes.alpha0_fn(p) ** 2 / sol.hp(p))
    denominator = modes.tau_star**2 * i1_profile
    if abs(denominator) < 1e-12:
        raise DegenerateModeError(
            f"leading coefficient {denominator!r} of the solvability condition degenerated"
        )
    if q_points is None:
        if kernel_shift != 0.0:
            raise ValueError("kernel_shift requires the q_points integration path")
        numerator = _quad(_lambda2_numerator_profile(modes, sol))
        return numerator / denominator
    return _lambda2_trapezoid(modes, sol, q_points, kernel_shift)


def _lambda2_trapezoid(
    modes: ModeSet, sol: StreamSolution, n_q: int, kernel_shift: float
) -> float:
    tau = modes.tau_star
    lam0 = modes.lambda0
    q = (np.arange(n_q) / n_q - 0.5) * lam0
    nodes, weights = np.polynomial.legendre.leggauss(160)
    p = 0.5 * (nodes + 1.0)
    wp = 0.5 * weights

    qq, pp = np.meshgrid(q, p, indexing="ij")
    hp = sol.hp(pp)
    c1 = np.cos(tau * qq)
    s1 = np.sin(tau * qq)
    c2 = np.cos(2.0 * tau * qq)
    s2 = np.sin(2.0 * tau * qq)

    a0 = modes.alpha0_fn(pp)
    a0p = modes.alpha0_prime_fn(pp)
    v0q = -tau * a0 * s1
    v0p = a0p * c1
    v1q = -2.0 * tau * modes.beta1_fn(pp) * s2
    v1p = modes.alpha1_prime_fn(pp) + modes.beta1_prime_fn(pp) * c2
    if kernel_shift != 0.0:
        v1q = v1q + kernel_shift * (-tau * a0 * s1)
        v1p = v1p + kernel_shift * a0p * c1

    t_term = (
        v0q * v1q / hp**2
        + 3.0 * v0p * v1p / hp**4
        - 2.0 * v0p**3 / hp**5
        - v0p * v0q**2 / hp**3
    )
    s_term = (v1q * v0p + v0q * v1p) / hp**2 - v0q * v0p**2 / hp**3

    dq = lam0 / n_q
    integrand = t_term * v0p + s_term * v0q
    numerator = dq * float(np.sum(integrand @ wp))
    denominator = 2.0 * dq * float(np.sum((v0q**2 / hp) @ wp))
    return numerator / denominator


@dataclass(frozen=True)
class SecondOrderResult:
    """Branch curvature data: wavelength and second-eigenvalue coefficients."""

    lambda2: float
    Lambda2: float
    mu2: float
    I1: float
    I2: float
    #: relative gap between the strip-variable and depth-variable forms of
    #: the curvature relation (independent quadratures)
    relation_residual: float


def mu2_from_lambda2(
    lambda2: float,
    modes: ModeSet,
    sol: StreamSolution,
    disp: DispersionResult,
) -> SecondOrderResult:
    """Second-eigenvalue curvature mu2 = -4 lambda2 I1 / I2.

    The same relation is re-evaluated in the physical depth variable,
    -4 lambda2 tau*^2 int gamma^2 dY = mu2 int gamma^2 / U' dY, through
    independent quadratures of the dispersion mode; the relative gap is
    reported as ``relation_residual``.
    """
    tau = modes.tau_star
    lam0 = modes.lambda0
    half = 0.5 * lam0
    i1 = tau * tau * half * _quad(lambda p: modes.alpha0_fn(p) ** 2 / sol.hp(p))
    i2 = half * _quad(lambda p: modes.alpha0_fn(p) ** 2)
    if i1 < 1e-12:
        raise DegenerateModeError(f"I1={i1!r} lost positivity")
    mu2 = -4.0 * lambda2 * i1 / i2

    a_y = _quad(lambda y: disp.gamma(y) ** 2, 0.0, sol.d)
    b_y = _quad(lambda y: disp.gamma(y) ** 2 / sol.u_prime(y), 0.0, sol.d)
    lhs = -4.0 * lambda2 * tau * tau * a_y
    rhs = mu2 * b_y
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    return SecondOrderResult(
        lambda2=float(lambda2),
        Lambda2=-float(lambda2) * lam0,
        mu2=float(mu2),
        I1=float(i1),
        I2=float(i2),
        relation_residual=float(residual),
    )


def mu2_via_eigenvalue_expansion(
    lambda2: float, modes: ModeSet, sol: StreamSolution
) -> float:
    """mu2 straight from the eigenvalue-expansion solvability condition.

    Independent of the -4 lambda2 I1 / I2 route: the three quadratic
    integral blocks of the second-order eigenvalue equation are assembled
    with their own q-reduction and combined with the given lambda2.
    """
    tau = modes.tau_star
    t2 = tau * tau
    lam0 = modes.lambda0
    a0, a0p = modes.alpha0_fn, modes.alpha0_prime_fn
    a1p = modes.alpha1_prime_fn
    b1, b1p = modes.beta1_fn, modes.beta1_prime_fn
    hp = sol.hp

    def t_block(p):
        w = hp(p)
        return (
            0.5 * t2 * a0(p) * a0p(p) * b1(p) / w**2
            + 1.5 * a0p(p) ** 2 * a1p(p) / w**4
            + 0.75 * a0p(p) ** 2 * b1p(p) / w**4
        )

    def s_block(p):
        w = hp(p)
        return (
            0.5 * t2 * a0(p) ** 2 * a1p(p) / w**2
            - 0.25 * t2 * a0(p) ** 2 * b1p(p) / w**2
            + 0.5 * t2 * a0(p) * a0p(p) * b1(p) / w**2
        )

    def g_block(p):
        w = hp(p)
        return 0.75 * a0p(p) ** 4 / w**5 + 0.25 * t2 * a0(p) ** 2 * a0p(p) ** 2 / w**3

    i1 = t2 * 0.5 * lam0 * _quad(lambda p: a0(p) ** 2 / hp(p))
    i2 = 0.5 * lam0 * _quad(lambda p: a0(p) ** 2)
    total = (
        2.0 * lambda2 * i1
        - 3.0 * lam0 * _quad(t_block)
        - 3.0 * lam0 * _quad(s_block)
        + 3.0 * lam0 * _quad(g_block)
    )
    return total / i2


def second_order_pipeline(
    sol: StreamSolution, disp: DispersionResult | None = None
) -> tuple[ModeSet, SecondOrderResult]:
    """Full chain: kernel mode, forcing split, profile solves, lambda2, mu2."""
    from .dispersion import tau_star as _tau_star

    if disp is None:
        disp = _tau_star(sol)
    mode = kernel_mode(sol, disp)
    forcing = rhs_modes(mode, sol)
    modes = second_order_modes(sol, disp, forcing, mode=mode)
    lam2 = lambda2_general(modes, sol)
    result = mu2_from_lambda2(lam2, modes, sol, disp)
    return modes, result
