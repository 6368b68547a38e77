from typing import Dict, Optional
import numpy as np
from .utils import KineticError
from .entropy_option import EntropyOption


def _log_values(values: np.ndarray, option: EntropyOption) -> np.ndarray:
    if option.log_floor:
        return np.log(np.maximum(values, option.floor_value))
    return np.log(values)



def _production_factor(nu: float) -> float:
    """``min{1 + 2 nu, 1 - nu}``, the constant of the production bound."""
    return min(1.0 + 2.0 * nu, 1.0 - nu)



def _stress_ratio(T, theta, nu: float, function: str) -> np.ndarray:
    """``sum_i theta_i / ((1-nu) T + nu theta_i)`` over the last axis of ``theta``."""
    T = np.asarray(T, dtype=float)
    denominators = (1.0 - nu) * T[..., None] + nu * theta
    min_den = float(np.min(denominators))
    if not min_den > 0:
        raise KineticError(
            "Non-positive denominator in the stress ratio",
            function=function,
            quantity="min denominator",
            value=min_den
        )
    return np.sum(theta / denominators, axis=-1)



def _remainder_floor(nu: float, A_nu: float, rho: float) -> float:
    """Lower bound of the remainder: ``6 nu A rho / (1 + 2 nu)`` for nu <= 0, else 0."""
    if nu >= 0:
        return 0.0
    return 6.0 * nu * A_nu * rho / (1.0 + 2.0 * nu)



def _scaled_error(a: float, b: float, scale: float) -> float:
    return abs(a - b) / scale



def _build_margins(
    nu: float,
    A_nu: float,
    rho: float,
    D_nu: float,
    rel_entropy: float,
    convexity_rhs: float,
    H_f: float,
    H_M0: float,
    H_M1: Optional[float],
    gap: float,
    gap_bound: Optional[float],
    F_nu: float,
    R_nu_closed: float
) -> Dict[str, Optional[float]]:
    """Named inequality slacks; each is nonnegative when its inequality holds.

    Margins that need the multivariate Gaussian are None for boundary states.
    """
    if nu > 0:
        stress_ratio = 3.0 - F_nu
    elif nu < 0:
        stress_ratio = F_nu - 3.0
    else:
        stress_ratio = -abs(F_nu - 3.0)
    return {
        "production_bound": D_nu - _production_factor(nu) * A_nu * rel_entropy,
        "convexity": D_nu - convexity_rhs,
        "gaussian_gap": None if gap_bound is None else gap - gap_bound,
        "maxwellian_below_gaussian": None if H_M1 is None else H_M1 - H_M0,
        "gaussian_below_f": None if H_M1 is None else H_f - H_M1,
        "stress_ratio": stress_ratio,
        "remainder_sign": nu * R_nu_closed,
        "remainder_floor": R_nu_closed - _remainder_floor(nu, A_nu, rho),
        "relative_entropy": rel_entropy
    }
