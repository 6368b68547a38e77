import numpy as np
from .gaussian_validate import _validate_nu


def _validate_certify_option(option) -> None:
    """Validate the parameters of a CertifyOption.

    Args:
        option (CertifyOption): The options.

    Raises:
        ValueError: If a count, range or tolerance is invalid.
    """
    if isinstance(option.count, bool) or not isinstance(option.count, (int, np.integer)) or option.count < 0:
        raise ValueError(f"count must be a nonnegative integer, got {option.count}.")
    if isinstance(option.seed, bool) or not isinstance(option.seed, (int, np.integer)) or option.seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {option.seed}.")
    if isinstance(option.grid_n, bool) or not isinstance(option.grid_n, (int, np.integer)) or option.grid_n < 2:
        raise ValueError(f"grid_n must be an integer >= 2, got {option.grid_n}.")
    if not option.nu_values:
        raise ValueError("nu_values must not be empty.")
    for nu in option.nu_values:
        _validate_nu(nu)
    if not np.isfinite(option.sigma) or option.sigma <= 0:
        raise ValueError(f"sigma must be positive, got {option.sigma}.")
    for R in option.truncation_levels:
        if not np.isfinite(R) or R <= 1.0:
            raise ValueError(f"Truncation levels must be larger than 1, got {R}.")
    for name in ("tolerance", "exact_tolerance", "remainder_tolerance", "split_tolerance"):
        value = getattr(option, name)
        if not np.isfinite(value) or value < 0:
            raise ValueError(f"{name} must be a nonnegative real, got {value}.")
    if not option.n_sigma > 0:
        raise ValueError(f"n_sigma must be positive, got {option.n_sigma}.")
    low, high = option.components
    if not (1 <= low <= high):
        raise ValueError(f"components must satisfy 1 <= min <= max, got {option.components}.")
    if not option.mean_range >= 0:
        raise ValueError(f"mean_range must be nonnegative, got {option.mean_range}.")
    eig_low, eig_high = option.eig_range
    if not (0 < eig_low <= eig_high):
        raise ValueError(f"eig_range must satisfy 0 < min <= max, got {option.eig_range}.")
    if isinstance(option.workers, bool) or not isinstance(option.workers, (int, np.integer)) or option.workers < 1:
        raise ValueError(f"workers must be a positive integer, got {option.workers}.")
