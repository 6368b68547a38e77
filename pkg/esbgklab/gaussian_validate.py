import numpy as np
from .utils import KineticError, EPS_PD, BOUNDARY_EPS


def _validate_nu(nu: float) -> None:
    """Validate the ellipsoidal parameter nu.

    Args:
        nu (float): The parameter, required in the open interval (-1/2, 1).

    Raises:
        ValueError: If nu is not a finite real in the admissible interval.
    """
    if isinstance(nu, bool) or not isinstance(nu, (int, float, np.floating, np.integer)):
        raise ValueError(f"nu must be a real number, got {type(nu).__name__}.")
    if not np.isfinite(nu):
        raise ValueError(f"nu must be finite, got {nu}.")
    if not -0.5 < nu < 1.0:
        raise ValueError(f"nu must lie in (-1/2, 1), got {nu}.")



def _validate_positive_definite(eigenvalues: np.ndarray, T: float, function: str) -> None:
    """Gate a temperature tensor on ``min eigenvalue > EPS_PD * T``.

    Raises:
        KineticError: If the tensor is not positive definite, with the offending eigenvalue.
    """
    min_eig = float(np.min(eigenvalues))
    if not min_eig > EPS_PD * T:
        raise KineticError(
            "Temperature tensor is not positive definite",
            function=function,
            quantity="min eigenvalue",
            value=min_eig
        )



def _validate_interior(theta: np.ndarray, T: float, function: str) -> None:
    """Gate a stress tensor on ``min theta_i > BOUNDARY_EPS * T``.

    States failing the gate are boundary states: the multivariate Gaussian and
    its entropy are undefined there.

    Raises:
        KineticError: If the stress tensor is degenerate.
    """
    min_theta = float(np.min(theta))
    if not min_theta > BOUNDARY_EPS * T:
        raise KineticError(
            "Boundary state: stress tensor is degenerate",
            function=function,
            quantity="min theta",
            value=min_theta
        )
