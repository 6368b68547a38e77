import numpy as np
from .utils import KineticError, BOUNDARY_EPS
from .entropy_option import EntropyOption


def _validate_strictly_positive(values: np.ndarray, option: EntropyOption, function: str) -> None:
    """Ensure ``ln f`` is defined at every node unless the floor is enabled.

    Raises:
        KineticError: If a node is zero or negative and ``option.log_floor`` is False.
    """
    if option.log_floor:
        return
    min_value = float(values.min())
    if not min_value > 0:
        raise KineticError(
            "Distribution has zero or negative nodes; enable log_floor to evaluate ln f",
            function=function,
            quantity="min value",
            value=min_value
        )



def _validate_rate(A_nu: float) -> None:
    """Validate the relaxation rate.

    Raises:
        ValueError: If A_nu is negative or not finite.
    """
    if not np.isfinite(A_nu) or A_nu < 0:
        raise ValueError(f"A_nu must be a nonnegative real, got {A_nu}.")



def _validate_truncation(R_trunc: float) -> None:
    """Validate the truncation level of the weak-compactness split.

    Raises:
        ValueError: If R_trunc is not a finite real larger than 1.
    """
    if not np.isfinite(R_trunc) or R_trunc <= 1.0:
        raise ValueError(f"R_trunc must be larger than 1, got {R_trunc}.")



def _validate_stress_eigenvalues(T: np.ndarray, theta: np.ndarray, function: str) -> None:
    """Check ``sum theta_i = 3T`` to 1e-10 relative and ``theta_i > 1e-10 T``.

    Raises:
        KineticError: On a violated trace constraint or a boundary state.
    """
    trace_error = np.abs(theta.sum(axis=-1) - 3.0 * T) / (3.0 * T)
    worst = float(np.max(trace_error))
    if worst > 1e-10:
        raise KineticError(
            "Stress eigenvalues violate the trace constraint sum(theta) = 3T",
            function=function,
            quantity="relative trace error",
            value=worst
        )
    ratio = float(np.min(theta / T[..., None]))
    if not ratio > BOUNDARY_EPS:
        raise KineticError(
            "Boundary state: stress eigenvalue is not positive",
            function=function,
            quantity="min theta / T",
            value=ratio
        )
