"""Linear second-order two-point boundary value problems on an interval.

Two problem shapes share one solver:

* physical form      v'' + q(y) v = f(y) on (0, L),  v(0) = 0, and either
                     a Robin condition v'(L) - rho v(L) = g or a Dirichlet
                     condition v(L) = g;
* hodograph form     -(u_p / w^3)_p + q(p) u = f(p) on (0, 1), u(0) = 0,
                     (-u_p / w^3 + rho u)(1) = g, with weight w = H_p > 0.

Both are solved by superposition of two initial value problems (homogeneous
and particular) integrated with a high-order adaptive Runge-Kutta scheme;
uniqueness is monitored through the shooting determinant of the right-hand
boundary functional.  An independent collocation discretization of the same
problems is kept as a cross-check path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import NearResonanceError

__all__ = ["RobinBVP", "BVPSolution", "solve", "solve_collocation", "solve_mode",
           "RESONANCE_TOL"]

#: normalized shooting determinants below this raise NearResonanceError
RESONANCE_TOL = 1e-8

_IVP_KW = dict(method="DOP853", rtol=1e-12, atol=1e-13, dense_output=True)


@dataclass(frozen=True)
class RobinBVP:
    """One linear Dirichlet-left / Robin-right two-point problem.

    ``coeff_q`` multiplies the unknown (q = omega'(U) - tau^2 in the
    physical form, q = tau^2 / H_p in the hodograph form), ``rhs`` is the
    interior forcing.  ``weight`` must supply H_p for the hodograph form and
    is ignored otherwise.  With ``dirichlet_right`` the right condition is
    u(L) = robin_g and robin_rho is ignored.
    """

    length: float
    coeff_q: Callable
    rhs: Callable
    robin_rho: float
    robin_g: float
    form: str = "physical"
    weight: Callable | None = field(default=None, compare=False)
    dirichlet_right: bool = False

    def __post_init__(self):
        if self.form not in ("physical", "hodograph"):
            raise ValueError(f"unknown form {self.form!r}")
        if self.form == "hodograph" and self.weight is None:
            raise ValueError("hodograph form requires the weight H_p")
        if not self.length > 0.0:
            raise ValueError("interval length must be positive")


@dataclass(eq=False)
class BVPSolution:
    """Grid samples plus dense evaluators of one two-point solve."""

    x: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    determinant: float
    value: Callable = field(repr=False)
    derivative: Callable = field(repr=False)
    #: hodograph flux u_p / H_p^3 as a dense callable (None for physical form)
    flux: Callable | None = field(default=None, repr=False)


def _system(bvp: RobinBVP) -> Callable:
    """First-order system for (state, companion-state) shooting.

    State layout: (z_h, w_h, z_w, w_w) with z the unknown and w its
    companion (z' in the physical form, the flux z_p/H_p^3 in the hodograph
    form).  The homogeneous pair starts from (0, 1), the particular pair
    from (0, 0) with the forcing switched on.
    """
    q = bvp.coeff_q
    f = bvp.rhs
    if bvp.form == "physical":

        def rhs(t, state):
            zh, wh, zw, ww = state
            qt = q(t)
            ft = f(t)
            return (wh, -qt * zh, ww, -qt * zw + ft)

    else:
        hp = bvp.weight

        def rhs(t, state):
            zh, wh, zw, ww = state
            hp3 = hp(t) ** 3
            qt = q(t)
            ft = f(t)
            return (hp3 * wh, qt * zh, hp3 * ww, qt * zw - ft)

    return rhs


def _right_functional(bvp: RobinBVP, z, w):
    """Value of the right boundary functional on a (z, w) pair."""
    if bvp.dirichlet_right:
        return z
    if bvp.form == "physical":
        return w - bvp.robin_rho * z
    return -w + bvp.robin_rho * z


def solve(bvp: RobinBVP, n_out: int = 2001) -> BVPSolution:
    """Solve a RobinBVP by superposition shooting.

    Raises NearResonanceError when the normalized shooting determinant is
    below RESONANCE_TOL, i.e. when the homogeneous problem is numerically
    degenerate (kernel case).
    """
    rhs = _system(bvp)
    length = bvp.length
    sol = integrate.solve_ivp(rhs, (0.0, length), [0.0, 1.0, 0.0, 0.0], **_IVP_KW)
    if not sol.success:
        raise ArithmeticError(f"IVP integration failed: {sol.message}")
    zh_l, wh_l, zw_l, ww_l = sol.y[:, -1]
    det = _right_functional(bvp, zh_l, wh_l)
    scale = max(abs(zh_l), abs(wh_l)) * max(1.0, abs(bvp.robin_rho))
    det_norm = det / scale if scale > 0.0 else det
    if abs(det_norm) < RESONANCE_TOL:
        raise NearResonanceError(det_norm)
    coeff = (bvp.robin_g - _right_functional(bvp, zw_l, ww_l)) / det

    dense = sol.sol

    def component(idx_h, idx_w, factor=None):
        """Dense evaluator of w + coeff*h for one state component.

        Shape-safe: accepts scalars and arrays of any shape (the ODE dense
        output itself only takes 1-D argument vectors).
        """

        def ev(t):
            arr = np.asarray(t, dtype=float)
            if arr.ndim == 0:
                vals = dense(float(arr))
                out = vals[idx_w] + coeff * vals[idx_h]
                if factor is not None:
                    out = out * factor(float(arr))
                return float(out)
            vals = dense(arr.ravel())
            out = vals[idx_w] + coeff * vals[idx_h]
            if factor is not None:
                out = out * np.asarray(factor(arr.ravel()))
            return out.reshape(arr.shape)

        return ev

    value = component(0, 2)
    if bvp.form == "physical":
        derivative = component(1, 3)
        flux = None
    else:
        hp = bvp.weight
        flux = component(1, 3)
        derivative = component(1, 3, factor=lambda t: np.asarray(hp(t)) ** 3)

    x = np.linspace(0.0, length, n_out)
    return BVPSolution(
        x=x,
        y=np.asarray(value(x)),
        yp=np.asarray(derivative(x)),
        determinant=float(det_norm),
        value=value,
        derivative=derivative,
        flux=flux,
    )


def solve_collocation(bvp: RobinBVP, n0: int = 201, tol: float = 1e-10) -> BVPSolution:
    """Same problem through the collocation path (independent discretization)."""
    q = bvp.coeff_q
    f = bvp.rhs
    if bvp.form == "physical":

        def fun(t, state):
            return np.vstack([state[1], -q(t) * state[0] + f(t)])

    else:
        hp = bvp.weight

        def fun(t, state):
            return np.vstack([hp(t) ** 3 * state[1], q(t) * state[0] - f(t)])

    def bc(left, right):
        return np.array([left[0], _right_functional(bvp, right[0], right[1]) - bvp.robin_g])

    x0 = np.linspace(0.0, bvp.length, n0)
    y0 = np.zeros((2, n0))
    res = integrate.solve_bvp(fun, bc, x0, y0, tol=tol, max_nodes=400000)
    if not res.success:
        raise ArithmeticError(f"collocation solve failed: {res.message}")

    def component(idx, factor=None):
        def ev(t):
            arr = np.asarray(t, dtype=float)
            if arr.ndim == 0:
                out = res.sol(float(arr))[idx]
                if factor is not None:
                    out = out * factor(float(arr))
                return float(out)
            out = res.sol(arr.ravel())[idx]
            if factor is not None:
                out = out * np.asarray(factor(arr.ravel()))
            return out.reshape(arr.shape)

        return ev

    value = component(0)
    if bvp.form == "physical":
        derivative = component(1)
        flux = None
    else:
        hp = bvp.weight
        flux = component(1)
        derivative = component(1, factor=lambda t: np.asarray(hp(t)) ** 3)

    x = np.linspace(0.0, bvp.length, len(res.x) if len(res.x) >= 2 else 2)
    return BVPSolution(
        x=x,
        y=np.asarray(value(x)),
        yp=np.asarray(derivative(x)),
        determinant=float("nan"),
        value=value,
        derivative=derivative,
        flux=flux,
    )


def solve_mode(stream, tau: float, rhs: Callable, robin_g: float,
               n_out: int = 2001) -> BVPSolution:
    """Solve the weighted surface-mode problem at frequency tau.

    This is the hodograph-form problem
        -(u_p / H_p^3)_p + tau^2 u / H_p = rhs,   u(0) = 0,
        -u_p / H_p^3 + u = robin_g at p = 1,
    with H_p taken exactly from the given stream.
    """
    tau = abs(float(tau))
    hp = stream.hp

    def coeff_q(p):
        return tau * tau / hp(p)

    bvp = RobinBVP(
        length=1.0,
        coeff_q=coeff_q,
        rhs=rhs,
        robin_rho=1.0,
        robin_g=float(robin_g),
        form="hodograph",
        weight=hp,
    )
    try:
        return solve(bvp, n_out=n_out)
    except NearResonanceError as exc:
        raise NearResonanceError(exc.determinant, tau=tau) from None
