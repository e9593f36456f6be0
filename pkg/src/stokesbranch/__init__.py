"""Small-amplitude analysis of steady gravity-wave branches on shear flows.

The package splits into five layers:

* ``stream``        polynomial vorticity functions and the uniform streams
                    they drive (depth, Bernoulli constant, Froude number,
                    critical shear);
* ``bvp``           linear Dirichlet/Robin two-point solves shared by the
                    dispersion and expansion layers;
* ``dispersion``    the dispersion function sigma(tau) and its positive
                    root, which fixes the bifurcation period;
* ``expansion``     second-order branch coefficients lambda2 / mu2 from the
                    strip-variable expansion (general vorticity);
* ``irrotational``  the fully closed-form chain for zero vorticity,
                    including the critical frequency, the Froude threshold,
                    and the assumption-validity window.

``cli`` wraps the layers into a batch front end with CSV/JSON output.
"""

from .bvp import BVPSolution, RobinBVP, solve, solve_collocation, solve_mode
from .dispersion import DispersionResult, gamma_solve, sigma, sigma0, tau_star
from .errors import (
    DegenerateModeError,
    NearResonanceError,
    NoBracketError,
    NoMinimumError,
    NoRootError,
    NoTwoRootsError,
    StokesBranchError,
)
from .expansion import (
    KernelMode,
    ModeSet,
    SecondOrderForcing,
    SecondOrderResult,
    kernel_mode,
    lambda2_general,
    mu2_from_lambda2,
    mu2_via_eigenvalue_expansion,
    rhs_modes,
    second_order_modes,
    second_order_pipeline,
)
from .irrotational import (
    AssumptionWindow,
    IrrotationalChain,
    assumption_window,
    chain,
    depths_from_r,
    expansion_residual,
    f_eval,
    froude_from_theta,
    froude_threshold,
    lambda2_irrotational,
    nu,
    second_order_coeffs,
    tau0_root,
    tau_from_theta,
    theta_from_froude,
)
from .stream import (
    CriticalPoint,
    FlowRegime,
    StreamSolution,
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

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # stream
    "VorticitySpec", "StreamSolution", "CriticalPoint", "FlowRegime",
    "omega_integral", "s_floor", "depth", "bernoulli_r", "critical_point",
    "stream_profile", "stream_from_bernoulli", "froude_condition",
    # bvp
    "RobinBVP", "BVPSolution", "solve", "solve_collocation", "solve_mode",
    # dispersion
    "DispersionResult", "gamma_solve", "sigma", "sigma0", "tau_star",
    # expansion
    "KernelMode", "SecondOrderForcing", "ModeSet", "SecondOrderResult",
    "kernel_mode", "rhs_modes", "second_order_modes", "lambda2_general",
    "mu2_from_lambda2", "mu2_via_eigenvalue_expansion", "second_order_pipeline",
    # irrotational
    "IrrotationalChain", "AssumptionWindow", "nu", "depths_from_r",
    "theta_from_froude", "froude_from_theta", "tau_from_theta",
    "second_order_coeffs", "f_eval", "lambda2_irrotational", "tau0_root",
    "froude_threshold", "assumption_window", "expansion_residual", "chain",
    # errors
    "StokesBranchError", "NearResonanceError", "NoRootError", "NoBracketError",
    "NoTwoRootsError", "NoMinimumError", "DegenerateModeError",
]
