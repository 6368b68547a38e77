from typing import Dict
import numpy as np
from .cli_option import Scenario, SCENARIO_FIELDS, VALID_KINDS, VALID_INITS, VALID_FORMATS
from .gaussian_validate import _validate_nu
from .solver_validate import VALID_INTEGRATORS


def _validate_scenario_keys(values: Dict[str, object], source: str) -> None:
    """Reject keys of a scenario file that name no scenario field.

    Args:
        values (Dict[str, object]): Parsed ``key=value`` pairs.
        source (str): The file the pairs came from, for the message.

    Raises:
        ValueError: If a key is unknown.
    """
    unknown = sorted(key for key in values if key not in SCENARIO_FIELDS)
    if unknown:
        raise ValueError(
            f"Unknown scenario keys in '{source}': {', '.join(unknown)}. "
            f"Valid keys are: {', '.join(SCENARIO_FIELDS)}."
        )



def _validate_positive(name: str, value: float) -> None:
    if value is None or not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive, got {value}.")



def _validate_count(name: str, value: int, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value}.")



def _validate_scenario(scenario: Scenario) -> None:
    """Validate every numeric range and choice of a Scenario at parse time.

    Args:
        scenario (Scenario): The merged scenario.

    Raises:
        ValueError: If a choice is unknown or a value is out of range.
    """
    if scenario.kind not in VALID_KINDS:
        raise ValueError(f"Invalid kind: '{scenario.kind}'. Must be one of {', '.join(VALID_KINDS)}.")
    if scenario.init not in VALID_INITS:
        raise ValueError(f"Invalid init: '{scenario.init}'. Must be one of {', '.join(VALID_INITS)}.")
    if scenario.init == "sinusoidal" and scenario.kind != "slab":
        raise ValueError("init 'sinusoidal' needs a spatial direction and is only valid for kind 'slab'.")
    if scenario.format not in VALID_FORMATS:
        raise ValueError(f"Invalid format: '{scenario.format}'. Must be one of {', '.join(VALID_FORMATS)}.")
    if scenario.integrator not in VALID_INTEGRATORS:
        raise ValueError(
            f"Invalid integrator: '{scenario.integrator}'. Must be one of {', '.join(VALID_INTEGRATORS)}."
        )
    _validate_count("grid_n", scenario.grid_n, 2)
    if scenario.vmax is not None:
        _validate_positive("vmax", scenario.vmax)
    _validate_nu(scenario.nu)
    if not scenario.nu_values:
        raise ValueError("nu_values must not be empty.")
    for nu in scenario.nu_values:
        _validate_nu(nu)
    _validate_positive("sigma_const", scenario.sigma_const)
    _validate_positive("dt", scenario.dt)
    _validate_positive("t_end", scenario.t_end)
    _validate_count("stride", scenario.stride, 1)
    if len(scenario.theta) != 3:
        raise ValueError(f"theta must have 3 entries, got {len(scenario.theta)}.")
    for value in scenario.theta:
        _validate_positive("theta", value)
    _validate_count("nx", scenario.nx, 1)
    _validate_positive("length", scenario.length)
    if not 0.0 <= scenario.amplitude < 1.0:
        raise ValueError(f"amplitude must be in [0, 1), got {scenario.amplitude}.")
    _validate_count("count", scenario.count, 0)
    _validate_count("seed", scenario.seed, 0)
    if len(scenario.components) != 2:
        raise ValueError(f"components must be a 'min,max' pair, got {scenario.components}.")
    if len(scenario.eig_range) != 2:
        raise ValueError(f"eig_range must be a 'min,max' pair, got {scenario.eig_range}.")
    _validate_positive("n_sigma", scenario.n_sigma)
    for name in ("tolerance", "exact_tolerance"):
        value = getattr(scenario, name)
        if not np.isfinite(value) or value < 0:
            raise ValueError(f"{name} must be a nonnegative real, got {value}.")
    _validate_count("stress_count", scenario.stress_count, 0)
    _validate_count("workers", scenario.workers, 1)
