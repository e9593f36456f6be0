"""Exception types shared across the package."""

from __future__ import annotations


class StokesBranchError(Exception):
    """Base class for numerical failures raised by this package."""


class NearResonanceError(StokesBranchError):
    """The two-point solve sits too close to the kernel of the operator.

    Raised when the normalized shooting determinant falls below the
    resonance threshold, which happens when the requested frequency is
    (numerically) a root of the dispersion function.
    """

    def __init__(self, determinant: float, tau: float | None = None):
        self.determinant = determinant
        self.tau = tau
        msg = f"shooting determinant {determinant:.3e} below resonance threshold"
        if tau is not None:
            msg += f" (tau={tau:.6g})"
        super().__init__(msg)


class NoRootError(StokesBranchError):
    """A monotone function has no root in its admissible range.

    Raised by the dispersion solver when sigma(0) >= 0 (then ``sigma0`` and
    ``froude`` describe the offending stream) and by the closed-form chain
    when the scaled dispersion equation has no positive root.
    """

    def __init__(self, message: str, sigma0: float | None = None,
                 froude: float | None = None):
        self.sigma0 = sigma0
        self.froude = froude
        super().__init__(message)


class NoBracketError(StokesBranchError):
    """A sign change required for bracketed root finding was not found."""


class NoTwoRootsError(StokesBranchError):
    """The conjugate-depth equation has no pair of distinct positive roots."""


class NoMinimumError(StokesBranchError):
    """No interior minimum of the Bernoulli function was bracketed."""


class DegenerateModeError(StokesBranchError):
    """A leading quadrature coefficient degenerated; input data is corrupt."""
