"""Dispersion analysis of a uniform stream.

gamma(Y; tau) solves

    gamma'' + omega'(U) gamma - tau^2 gamma = 0,  gamma(0) = 0, gamma(d) = 1,

and the dispersion function is sigma(tau) = kappa gamma'(d, tau) - 1/kappa
+ omega(1) with kappa = U'(d).  sigma is even, strictly increasing for
tau > 0, grows like kappa*tau, and has a unique positive root tau_star
exactly when sigma(0) < 0 (equivalently: Froude number < 1).  tau_star
fixes the bifurcation period 2*pi/tau_star of the small-wave branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize

from . import bvp as _bvp
from .errors import NoRootError, StokesBranchError
from .stream import StreamSolution

__all__ = ["DispersionResult", "gamma_solve", "sigma", "sigma0", "tau_star"]

#: sigma(0) values above this are treated as "no positive root"; the exact
#: boundary sigma(0) = 0 lands here up to integrator roundoff
SIGMA0_BOUNDARY_TOL = -1e-11


def gamma_solve(sol: StreamSolution, tau: float, n_out: int = 2001) -> _bvp.BVPSolution:
    """Vertical mode gamma(Y; tau) of the linearized surface problem.

    Dirichlet data 0 at the bottom and 1 at the surface; evaluated at |tau|
    since the mode is even in the frequency.
    """
    tau = abs(float(tau))
    vort = sol.vort

    def coeff_q(y):
        return vort.omega_prime(sol.u(y)) - tau * tau

    problem = _bvp.RobinBVP(
        length=sol.d,
        coeff_q=coeff_q,
        rhs=lambda y: 0.0,
        robin_rho=0.0,
        robin_g=1.0,
        form="physical",
        dirichlet_right=True,
    )
    return _bvp.solve(problem, n_out=n_out)


def sigma(sol: StreamSolution, tau: float) -> float:
    """Dispersion function kappa*gamma'(d, tau) - 1/kappa + omega(1).

    The surface derivative gamma'(d) comes from the integrator state, not
    from differencing boundary samples.
    """
    mode = gamma_solve(sol, tau, n_out=2)
    kappa = sol.kappa
    return kappa * float(mode.derivative(sol.d)) - 1.0 / kappa + float(
        sol.vort.omega(1.0)
    )


def sigma0(sol: StreamSolution) -> float:
    """sigma at zero frequency; negative exactly in the wave-bearing regime."""
    return sigma(sol, 0.0)


@dataclass(eq=False)
class DispersionResult:
    """Root data of the dispersion equation for one stream."""

    tau_grid: np.ndarray
    sigma_values: np.ndarray
    tau_star: float
    lambda0: float
    gamma_star: np.ndarray
    #: dense evaluators of gamma(.; tau_star) and its Y-derivative
    gamma: Callable = field(repr=False)
    gamma_prime: Callable = field(repr=False)


def tau_star(sol: StreamSolution, tol: float = 1e-12, n_scan: int = 33) -> DispersionResult:
    """Locate the positive root of the dispersion function.

    The upper bracket starts at max(4, 4*(|sigma(0)|+1)/kappa) and doubles
    until sigma turns positive (guaranteed by the linear growth of sigma);
    Brent iteration then refines the root.  Raises NoRootError when
    sigma(0) >= 0 (up to boundary roundoff), reporting the Froude number of
    the offending stream.
    """
    s0 = sigma0(sol)
    if s0 >= SIGMA0_BOUNDARY_TOL:
        raise NoRootError(
            f"no positive dispersion root: sigma(0)={s0:.6g} >= 0 "
            f"(Froude number {sol.froude:.6g})",
            sigma0=s0,
            froude=sol.froude,
        )
    kappa = sol.kappa
    hi = max(4.0, 4.0 * (abs(s0) + 1.0) / kappa)
    for _ in range(60):
        if sigma(sol, hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise StokesBranchError("failed to bracket the dispersion root")
    root = float(optimize.brentq(lambda t: sigma(sol, t), 0.0, hi, xtol=tol, rtol=8.9e-16))

    tau_grid = np.linspace(0.0, hi, n_scan)
    sigma_values = np.array([s0] + [sigma(sol, t) for t in tau_grid[1:]])
    crossings = int(np.count_nonzero(np.diff(np.sign(sigma_values)) != 0))
    if crossings > 1:
        raise StokesBranchError(
            f"dispersion function changes sign {crossings} times on the scan grid; "
            "refusing to continue with a non-unique root"
        )

    mode = gamma_solve(sol, root, n_out=len(sol.grid_y))
    gamma_star = np.asarray(mode.value(sol.grid_y))
    return DispersionResult(
        tau_grid=tau_grid,
        sigma_values=sigma_values,
        tau_star=root,
        lambda0=2.0 * math.pi / root,
        gamma_star=gamma_star,
        gamma=mode.value,
        gamma_prime=mode.derivative,
    )
