import numpy as np
from .gaussian_validate import _validate_nu


VALID_INTEGRATORS = {"rk4", "euler"}


def _validate_solver_config(cfg) -> None:
    """Validate the parameters of a SolverConfig.

    Args:
        cfg (SolverConfig): The configuration.

    Raises:
        ValueError: If any parameter is out of range.
    """
    _validate_nu(cfg.nu)
    if cfg.sigma_alpha is None and cfg.sigma_beta is None:
        if not np.isfinite(cfg.sigma_const) or cfg.sigma_const < 0:
            raise ValueError(f"sigma_const must be a nonnegative real, got {cfg.sigma_const}.")
    else:
        for name in ("sigma_alpha", "sigma_beta"):
            value = getattr(cfg, name)
            if value is not None and not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}.")
    if not np.isfinite(cfg.dt) or cfg.dt <= 0:
        raise ValueError(f"dt must be positive, got {cfg.dt}.")
    if not np.isfinite(cfg.t_end) or cfg.t_end <= 0:
        raise ValueError(f"t_end must be positive, got {cfg.t_end}.")
    if cfg.integrator not in VALID_INTEGRATORS:
        raise ValueError(f"Invalid integrator: '{cfg.integrator}'. Must be one of {sorted(VALID_INTEGRATORS)}")
    if isinstance(cfg.output_stride, bool) or not isinstance(cfg.output_stride, (int, np.integer)) or cfg.output_stride < 1:
        raise ValueError(f"output_stride must be a positive integer, got {cfg.output_stride}.")



def _validate_stability(dt: float, A_nu: float) -> None:
    """Gate explicit stepping on ``dt * A_nu <= 0.5``.

    Raises:
        ValueError: If the time step is too large for the relaxation rate.
    """
    if dt * A_nu > 0.5:
        raise ValueError(
            f"Stability gate violated: dt * A_nu = {dt * A_nu:.6g} > 0.5. "
            f"Use dt <= {0.5 / A_nu:.6g}."
        )



def _validate_cfl(dt: float, v_max: float, dx: float) -> None:
    """Gate slab transport on ``dt * max|v_1| / dx <= 0.9``.

    Raises:
        ValueError: If the CFL number is too large.
    """
    cfl = dt * v_max / dx
    if cfl > 0.9:
        raise ValueError(f"CFL condition violated: dt * v_max / dx = {cfl:.6g} > 0.9. Use dt <= {0.9 * dx / v_max:.6g}.")



def _validate_slab_params(nx: int, L: float) -> None:
    """Validate the spatial grid of the slab.

    Raises:
        ValueError: If nx is not a positive integer or L is not positive.
    """
    if isinstance(nx, bool) or not isinstance(nx, (int, np.integer)) or nx < 1:
        raise ValueError(f"nx must be a positive integer, got {nx}.")
    if not np.isfinite(L) or L <= 0:
        raise ValueError(f"L must be positive, got {L}.")
