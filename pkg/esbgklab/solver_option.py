from typing import Optional
from .solver_validate import _validate_solver_config


class SolverConfig:
    """Options for time integration of the ES-BGK relaxation dynamics.

    Defines the model parameters and the numerical scheme used by
    :func:`step_homogeneous`, :func:`run_homogeneous` and :func:`run_slab_1d`.
    The collision frequency is ``sigma(rho, T)``, either a constant or the power
    law ``rho^alpha T^beta``, and the relaxation rate is
    ``A_nu = sigma / (1 - nu)``. With the constant ``sigma = 3`` this is the
    homogeneous convention under which the decay rate
    ``3 min{1, (1+2nu)/(1-nu)}`` is proved. See :ref:`relaxation_runs` for
    usage examples.

    Args:
        nu (float): Ellipsoidal parameter in (-1/2, 1). ``nu = 0`` is the classical
            BGK model and ``nu = -1/2`` the limit with the correct Prandtl number.
            Defaults to 0.
        sigma_const (float): Constant collision frequency, used when neither power-law
            exponent is given. Defaults to 3.0.
        sigma_alpha (Optional[float]): Density exponent of the power law. Defaults to None.
        sigma_beta (Optional[float]): Temperature exponent of the power law. Defaults to None.
        dt (float): Time step. Defaults to 0.01.
        t_end (float): Final time. Defaults to 3.0.
        integrator (str): Either 'rk4' or 'euler'. Defaults to 'rk4'.
        conservation_correction (bool): Whether to refit every sampled Gaussian so
            that its discrete density, velocity and temperature match the stage
            moments exactly. Defaults to False.
        output_stride (int): Record a snapshot every this many steps (the final
            step is always recorded). Defaults to 1.
        interactive_mode (bool): Whether to print status messages and a progress
            bar. Defaults to False.
        log_floor (bool): Whether to floor ``f`` at 1e-300 inside logarithms of the
            entropy diagnostics. Defaults to False.
        store_distributions (bool): Whether to keep the distribution at every
            snapshot on the trajectory. Defaults to False.

    Attributes:
        nu (float): The ellipsoidal parameter.
        sigma_const (float): The constant collision frequency.
        sigma_alpha (Optional[float]): The density exponent.
        sigma_beta (Optional[float]): The temperature exponent.
        dt (float): The time step.
        t_end (float): The final time.
        integrator (str): The time integrator.
        conservation_correction (bool): Indicates whether the correction is enabled.
        output_stride (int): The snapshot stride.
        interactive_mode (bool): Indicates whether interactive mode is enabled.
        log_floor (bool): Indicates whether the logarithm floor is enabled.
        store_distributions (bool): Indicates whether distributions are stored.

    Raises:
        ValueError: If any parameter is out of range.

    Examples:
        >>> from esbgklab import SolverConfig, run_homogeneous
        >>> cfg = SolverConfig(
        ...     nu = -0.25,
        ...     sigma_const = 3.0,
        ...     dt = 0.01,
        ...     t_end = 3.0,
        ...     interactive_mode = True
        ... )
        >>> cfg.collision_frequency(1.0, 1.0)
        2.4
    """
    def __init__(
        self,
        nu: float = 0.0,
        sigma_const: float = 3.0,
        sigma_alpha: Optional[float] = None,
        sigma_beta: Optional[float] = None,
        dt: float = 0.01,
        t_end: float = 3.0,
        integrator: str = "rk4",
        conservation_correction: bool = False,
        output_stride: int = 1,
        interactive_mode: bool = False,
        log_floor: bool = False,
        store_distributions: bool = False
    ):
        self.nu = nu
        self.sigma_const = sigma_const
        self.sigma_alpha = sigma_alpha
        self.sigma_beta = sigma_beta
        self.dt = dt
        self.t_end = t_end
        self.integrator = integrator
        self.conservation_correction = conservation_correction
        self.output_stride = output_stride
        self.interactive_mode = interactive_mode
        self.log_floor = log_floor
        self.store_distributions = store_distributions
        _validate_solver_config(self)


    @property
    def sigma_mode(self) -> str:
        """'power' when an exponent is set, otherwise 'constant'."""
        if self.sigma_alpha is None and self.sigma_beta is None:
            return "constant"
        return "power"


    def sigma(self, rho: float, T: float) -> float:
        """Collision frequency ``sigma(rho, T)``."""
        if self.sigma_mode == "constant":
            return float(self.sigma_const)
        return float(rho ** (self.sigma_alpha or 0.0) * T ** (self.sigma_beta or 0.0))


    def collision_frequency(self, rho: float, T: float) -> float:
        """Relaxation rate ``A_nu = sigma(rho, T) / (1 - nu)``."""
        return self.sigma(rho, T) / (1.0 - self.nu)


    def prandtl_number(self) -> float:
        """Prandtl number ``1 / (1 - nu)`` of the model."""
        return 1.0 / (1.0 - self.nu)


    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "sigma_mode": self.sigma_mode,
            "sigma_const": self.sigma_const,
            "sigma_alpha": self.sigma_alpha,
            "sigma_beta": self.sigma_beta,
            "dt": self.dt,
            "t_end": self.t_end,
            "integrator": self.integrator,
            "conservation_correction": self.conservation_correction,
            "output_stride": self.output_stride
        }
