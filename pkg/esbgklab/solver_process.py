from typing import Callable, Tuple
import numpy as np
from .grid_main import VelocityGrid, DistributionFunction
from .moment_main import _moments
from .gaussian_main import EllipsoidalGaussian, ellipsoidal_gaussian, evaluate_gaussian, conservation_correct
from .gaussian_process import _build_tensor


def _relaxation_rhs(grid: VelocityGrid, cfg) -> Callable[[np.ndarray], np.ndarray]:
    """Right-hand side ``A_nu (M_nu - f)`` with ``M_nu`` and ``A_nu`` from the stage moments."""
    velocities = grid.velocities

    def rhs(values: np.ndarray) -> np.ndarray:
        state = _moments(grid, values, "step_homogeneous")
        A_nu = cfg.collision_frequency(state.rho, state.T)
        if A_nu == 0.0:
            return np.zeros_like(values)
        if cfg.conservation_correction:
            M = conservation_correct(evaluate_gaussian(ellipsoidal_gaussian(state, cfg.nu), grid), state).values
        else:
            M = EllipsoidalGaussian(state.rho, state.U, _build_tensor(state, cfg.nu, "step_homogeneous")).density(velocities)
        return A_nu * (M - values)

    return rhs



def _rk4(values: np.ndarray, rhs: Callable[[np.ndarray], np.ndarray], dt: float) -> np.ndarray:
    """Classical Runge-Kutta increment direction; the new state is ``values + dt * result``."""
    b_coeff = np.array([1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0])

    k_coeff0 = rhs(values)
    k_coeff1 = rhs(values + dt * 0.5 * k_coeff0)
    k_coeff2 = rhs(values + dt * 0.5 * k_coeff1)
    k_coeff3 = rhs(values + dt * k_coeff2)

    return (
        b_coeff[0] * k_coeff0
        + b_coeff[1] * k_coeff1
        + b_coeff[2] * k_coeff2
        + b_coeff[3] * k_coeff3
    )



def _euler(values: np.ndarray, rhs: Callable[[np.ndarray], np.ndarray], dt: float) -> np.ndarray:
    return rhs(values)



_INTEGRATORS = {"rk4": _rk4, "euler": _euler}



def _advance(
    values: np.ndarray,
    rhs: Callable[[np.ndarray], np.ndarray],
    dt: float,
    integrator: str,
    weight: float
) -> Tuple[np.ndarray, float]:
    """One relaxation step followed by clipping; returns the values and the clipped mass."""
    new_values = values + dt * _INTEGRATORS[integrator](values, rhs, dt)
    return _clip_negative(new_values, weight)



def _clip_negative(values: np.ndarray, weight: float) -> Tuple[np.ndarray, float]:
    negative = values < 0
    if not np.any(negative):
        return values, 0.0
    clipped = -weight * float(values[negative].sum())
    return np.where(negative, 0.0, values), clipped



def _upwind_transport(F: np.ndarray, vx: np.ndarray, dt: float, dx: float) -> np.ndarray:
    """First-order upwind step of ``f_t + v_1 f_x = 0`` on a periodic grid.

    ``F`` has shape (nx, nodes); each velocity column moves independently.
    """
    c = dt * vx / dx
    backward = F - np.roll(F, 1, axis=0)
    forward = np.roll(F, -1, axis=0) - F
    return F - np.where(c > 0, c * backward, c * forward)



def _slab_invariants(F: np.ndarray, grid: VelocityGrid, dx: float) -> Tuple[float, np.ndarray, float]:
    """Total mass, momentum and energy ``(1/2)|v|^2`` over the slab."""
    v = grid.velocities
    column = dx * grid.weight * F.sum(axis=0)
    mass = float(column.sum())
    momentum = column @ v
    energy = 0.5 * float(column @ np.sum(v * v, axis=1))
    return mass, momentum, energy



def _as_cells(f0, nx: int) -> Tuple[VelocityGrid, np.ndarray]:
    """Stack an x-indexed initial condition into an (nx, nodes) array."""
    if isinstance(f0, DistributionFunction):
        return f0.grid, np.tile(f0.values, (nx, 1))
    cells = list(f0)
    if len(cells) != nx:
        raise ValueError(f"Expected {nx} cell distributions, got {len(cells)}.")
    grid = cells[0].grid
    for cell in cells[1:]:
        if not cell.grid.same_as(grid):
            raise ValueError("All cell distributions must share one velocity grid.")
    return grid, np.stack([cell.values for cell in cells])
