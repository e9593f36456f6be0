"""Two-point solver: closed forms, change of variables, cross-discretization."""

from __future__ import annotations

import math

import numpy as np
import pytest

from stokesbranch import (
    NearResonanceError,
    RobinBVP,
    VorticitySpec,
    solve,
    solve_collocation,
    solve_mode,
    tau_star,
)


def _gamma_problem(sol, tau, value=1.0):
    vort = sol.vort
    return RobinBVP(
        length=sol.d,
        coeff_q=lambda y: vort.omega_prime(sol.u(y)) - tau * tau,
        rhs=lambda y: 0.0 * np.asarray(y),
        robin_rho=0.0,
        robin_g=value,
        form="physical",
        dirichlet_right=True,
    )


def test_constant_coefficient_dirichlet_closed_form(make_stream):
    """omega = 0: the surface-normalized mode is sinh(tau Y)/sinh(tau d)."""
    sol = make_stream((0.0,), 0.8)
    y = np.linspace(0.0, sol.d, 33)
    for tau in (0.5, 1.0, 2.5):
        out = solve(_gamma_problem(sol, tau))
        exact = np.sinh(tau * y) / math.sinh(tau * sol.d)
        assert np.max(np.abs(out.value(y) - exact)) < 1e-11
        assert float(out.derivative(sol.d)) == pytest.approx(
            tau / math.tanh(tau * sol.d), rel=1e-11
        )


def test_zero_data_gives_zero_solution(make_stream):
    sol = make_stream((0.0,), 0.8)
    problem = RobinBVP(
        length=sol.d,
        coeff_q=lambda y: -1.5,
        rhs=lambda y: 0.0,
        robin_rho=sol.rho0(),
        robin_g=0.0,
        form="physical",
    )
    out = solve(problem)
    assert np.max(np.abs(out.y)) < 1e-13


def test_hodograph_constant_weight_maps_to_physical(make_stream):
    """omega = 0 has constant H_p = 1/s, so u = v * H_p pointwise."""
    sol = make_stream((0.0,), 0.8)
    tau = 1.3
    g = 0.4

    phys = solve(
        RobinBVP(
            length=sol.d,
            coeff_q=lambda y: -(tau * tau) * np.ones_like(np.asarray(y, dtype=float)),
            rhs=lambda y: 0.0 * np.asarray(y),
            robin_rho=sol.rho0(),
            robin_g=g,
            form="physical",
        )
    )
    hod = solve_mode(sol, tau, lambda p: 0.0 * np.asarray(p), -sol.kappa * g)
    p = np.linspace(0.0, 1.0, 21)
    mapped = np.asarray(phys.value(sol.h(p))) * np.asarray(sol.hp(p))
    assert np.max(np.abs(np.asarray(hod.value(p)) - mapped)) < 1e-10


def test_hodograph_general_change_of_variables(vortical_shear, make_stream):
    """u(p) = v(H(p)) H_p solves the weighted problem with forcing -f(H(p))
    and boundary constant -kappa*g whenever v solves the physical problem
    with data (f, g)."""
    coeffs, s = vortical_shear["cubic"]
    sol = make_stream(coeffs, s)
    tau = 0.9
    g = 0.7

    def f_phys(y):
        return np.sin(2.0 * np.asarray(y)) + 0.3

    phys = solve(
        RobinBVP(
            length=sol.d,
            coeff_q=lambda y: sol.vort.omega_prime(sol.u(y)) - tau * tau,
            rhs=f_phys,
            robin_rho=sol.rho0(),
            robin_g=g,
            form="physical",
        )
    )
    hod = solve_mode(sol, tau, lambda p: -f_phys(sol.h(p)), -sol.kappa * g)
    p = np.linspace(0.0, 1.0, 21)
    mapped = np.asarray(phys.value(sol.h(p))) * np.asarray(sol.hp(p))
    assert np.max(np.abs(np.asarray(hod.value(p)) - mapped)) < 1e-9


@pytest.mark.parametrize("name", ["linear", "cubic"])
def test_shooting_matches_collocation(name, vortical_shear, make_stream):
    """Independent discretizations agree on a smooth battery."""
    coeffs, s = vortical_shear[name]
    sol = make_stream(coeffs, s)
    problems = [
        RobinBVP(
            length=sol.d,
            coeff_q=lambda y: sol.vort.omega_prime(sol.u(y)) - 1.21,
            rhs=lambda y: np.cos(3.0 * np.asarray(y)),
            robin_rho=sol.rho0(),
            robin_g=-0.25,
            form="physical",
        ),
        RobinBVP(
            length=1.0,
            coeff_q=lambda p: 2.56 / sol.hp(p),
            rhs=lambda p: np.asarray(p) ** 2 - 0.4,
            robin_rho=1.0,
            robin_g=0.3,
            form="hodograph",
            weight=sol.hp,
        ),
    ]
    for problem in problems:
        shot = solve(problem)
        coll = solve_collocation(problem)
        x = np.linspace(0.0, problem.length, 401)
        assert np.max(np.abs(np.asarray(shot.value(x)) - np.asarray(coll.value(x)))) < 1e-7


def test_near_resonance_raised_at_dispersion_root(make_stream):
    sol = make_stream((0.0,), 0.8)
    disp = tau_star(sol)
    with pytest.raises(NearResonanceError):
        solve_mode(sol, disp.tau_star, lambda p: 0.0 * np.asarray(p), 1.0)


def test_determinant_sign_changes_only_at_dispersion_root(make_stream):
    """The mode determinant flips sign exactly once on (0, 4 tau*)."""
    sol = make_stream((0.0,), 0.8)
    disp = tau_star(sol)
    taus = np.linspace(0.05, 4.0 * disp.tau_star, 41)
    dets = []
    for tau in taus:
        out = solve_mode(sol, tau, lambda p: 0.0 * np.asarray(p), 1.0)
        dets.append(out.determinant)
    signs = np.sign(dets)
    flips = np.nonzero(np.diff(signs) != 0)[0]
    assert len(flips) == 1
    assert taus[flips[0]] < disp.tau_star < taus[flips[0] + 1]


def test_weighted_bilinear_form_is_symmetric(make_stream):
    """Discrete Gram matrix of the weighted form is symmetric to rounding."""
    sol = make_stream((0.0,), 0.8)
    tau = 1.7
    nodes, weights = np.polynomial.legendre.leggauss(48)
    p = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    hp = np.asarray(sol.hp(p))

    basis = [lambda x, k=k: np.asarray(x) ** k for k in range(1, 7)]
    basis_prime = [lambda x, k=k: k * np.asarray(x) ** (k - 1) for k in range(1, 7)]
    gram = np.empty((6, 6))
    for i in range(6):
        for j in range(6):
            gram[i, j] = float(
                np.sum(
                    w
                    * (
                        basis_prime[i](p) * basis_prime[j](p) / hp**3
                        + tau * tau * basis[i](p) * basis[j](p) / hp
                    )
                )
            )
    assert np.max(np.abs(gram - gram.T)) < 1e-14 * np.max(np.abs(gram))


def test_robin_bvp_validation():
    with pytest.raises(ValueError):
        RobinBVP(length=1.0, coeff_q=lambda p: 0.0, rhs=lambda p: 0.0,
                 robin_rho=1.0, robin_g=0.0, form="spectral")
    with pytest.raises(ValueError):
        RobinBVP(length=1.0, coeff_q=lambda p: 0.0, rhs=lambda p: 0.0,
                 robin_rho=1.0, robin_g=0.0, form="hodograph")
    with pytest.raises(ValueError):
        RobinBVP(length=-1.0, coeff_q=lambda p: 0.0, rhs=lambda p: 0.0,
                 robin_rho=1.0, robin_g=0.0)
