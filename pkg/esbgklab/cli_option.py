from typing import Optional, Tuple
from .utils import NU_GRID


VALID_KINDS = ("relax", "slab", "certify", "linearized")
VALID_INITS = ("equilibrium", "anisotropic", "mixture", "sinusoidal")
VALID_FORMATS = ("csv", "json")


def _float_tuple(text: str) -> Tuple[float, ...]:
    return tuple(float(part) for part in str(text).split(",") if part.strip())


def _int_tuple(text: str) -> Tuple[int, ...]:
    return tuple(int(part) for part in str(text).split(",") if part.strip())


def _flag(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ("on", "true", "yes", "1"):
        return True
    if value in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"Invalid switch value: '{text}'. Use on or off.")


# Scenario keys and the converters applied to their string values.
SCENARIO_FIELDS = {
    "kind": str,
    "grid_n": int,
    "vmax": float,
    "nu": float,
    "prandtl": float,
    "nu_values": _float_tuple,
    "sigma_const": float,
    "sigma_alpha": float,
    "sigma_beta": float,
    "dt": float,
    "t_end": float,
    "stride": int,
    "integrator": str,
    "correction": _flag,
    "log_floor": _flag,
    "init": str,
    "theta": _float_tuple,
    "nx": int,
    "length": float,
    "amplitude": float,
    "count": int,
    "seed": int,
    "components": _int_tuple,
    "mean_range": float,
    "eig_range": _float_tuple,
    "n_sigma": float,
    "tolerance": float,
    "exact_tolerance": float,
    "stress_count": int,
    "workers": int,
    "format": str,
    "out": str
}


class Scenario:
    """A complete run description for the command-line interface.

    Collects the grid, the solver configuration, the ensemble and the output
    settings of one run. Values come from, in increasing precedence, these
    defaults, a flat ``key=value`` scenario file and command-line flags. Keys of
    the file are the long flag names with ``_`` in place of ``-``; see
    :ref:`scenario_files`.

    Args:
        kind (str): One of 'relax', 'slab', 'certify', 'linearized'. Defaults to 'relax'.
        grid_n (int): Grid points per velocity axis. Defaults to 48.
        vmax (Optional[float]): Velocity half-width; None sizes the grid from the
            initial data (8 standard deviations). Defaults to None.
        nu (float): Ellipsoidal parameter. Defaults to 0.
        prandtl (Optional[float]): Prandtl number; when given, sets nu to
            ``(Pr - 1) / Pr``. Defaults to None.
        nu_values (Tuple[float, ...]): Values of nu for 'certify' and
            'linearized'. Defaults to the standard grid.
        sigma_const (float): Constant collision frequency. Defaults to 3.0.
        sigma_alpha (Optional[float]): Power-law density exponent. Defaults to None.
        sigma_beta (Optional[float]): Power-law temperature exponent. Defaults to None.
        dt (float): Time step. Defaults to 0.01.
        t_end (float): Final time. Defaults to 3.0.
        stride (int): Snapshot stride. Defaults to 1.
        integrator (str): 'rk4' or 'euler'. Defaults to 'rk4'.
        correction (bool): Conservation correction of the sampled Gaussian.
            Defaults to False.
        log_floor (bool): Floor ``f`` inside logarithms. Defaults to False.
        init (str): Initial data, one of 'equilibrium', 'anisotropic', 'mixture',
            'sinusoidal' (slab only). Defaults to 'anisotropic'.
        theta (Tuple[float, ...]): Diagonal stress tensor of the anisotropic
            initial data. Defaults to (2.0, 0.5, 0.5).
        nx (int): Slab cells. Defaults to 32.
        length (float): Slab length. Defaults to 1.0.
        amplitude (float): Density amplitude of the sinusoidal slab data, in [0, 1).
            Defaults to 0.2.
        count (int): Ensemble size, or random functions for 'linearized'.
            Defaults to 1000.
        seed (int): Random seed. Defaults to 42.
        components (Tuple[int, ...]): Range of mixture components. Defaults to (2, 4).
        mean_range (float): Half-width of the box of component means. Defaults to 1.
        eig_range (Tuple[float, ...]): Range of covariance eigenvalues. Defaults to (0.3, 2.0).
        n_sigma (float): Standard deviations held by an auto-sized grid. Defaults to 8.
        tolerance (float): Relative tolerance of quadrature-limited checks. Defaults to 1e-6.
        exact_tolerance (float): Tolerance of closed-form checks. Defaults to 1e-12.
        stress_count (int): Random states of the closed-form stress ratio sweep.
            Defaults to 100000.
        workers (int): Worker threads for certification. Defaults to 1.
        format (str): 'csv' or 'json'. Defaults to 'csv' ('json' for 'certify').
        out (Optional[str]): Output path. Defaults to '<kind>.<format>'.
        interactive_mode (bool): Whether to print status messages and progress
            bars. Defaults to True.

    Attributes:
        Same names as the arguments.
    """
    def __init__(
        self,
        kind: str = "relax",
        grid_n: int = 48,
        vmax: Optional[float] = None,
        nu: float = 0.0,
        prandtl: Optional[float] = None,
        nu_values: Tuple[float, ...] = NU_GRID,
        sigma_const: float = 3.0,
        sigma_alpha: Optional[float] = None,
        sigma_beta: Optional[float] = None,
        dt: float = 0.01,
        t_end: float = 3.0,
        stride: int = 1,
        integrator: str = "rk4",
        correction: bool = False,
        log_floor: bool = False,
        init: str = "anisotropic",
        theta: Tuple[float, ...] = (2.0, 0.5, 0.5),
        nx: int = 32,
        length: float = 1.0,
        amplitude: float = 0.2,
        count: int = 1000,
        seed: int = 42,
        components: Tuple[int, ...] = (2, 4),
        mean_range: float = 1.0,
        eig_range: Tuple[float, ...] = (0.3, 2.0),
        n_sigma: float = 8.0,
        tolerance: float = 1e-6,
        exact_tolerance: float = 1e-12,
        stress_count: int = 100000,
        workers: int = 1,
        format: Optional[str] = None,
        out: Optional[str] = None,
        interactive_mode: bool = True
    ):
        self.kind = kind
        self.grid_n = grid_n
        self.vmax = vmax
        self.nu = nu
        self.prandtl = prandtl
        self.nu_values = tuple(nu_values)
        self.sigma_const = sigma_const
        self.sigma_alpha = sigma_alpha
        self.sigma_beta = sigma_beta
        self.dt = dt
        self.t_end = t_end
        self.stride = stride
        self.integrator = integrator
        self.correction = correction
        self.log_floor = log_floor
        self.init = init
        self.theta = tuple(theta)
        self.nx = nx
        self.length = length
        self.amplitude = amplitude
        self.count = count
        self.seed = seed
        self.components = tuple(components)
        self.mean_range = mean_range
        self.eig_range = tuple(eig_range)
        self.n_sigma = n_sigma
        self.tolerance = tolerance
        self.exact_tolerance = exact_tolerance
        self.stress_count = stress_count
        self.workers = workers
        self.format = format or ("json" if kind == "certify" else "csv")
        self.out = out or f"{kind}.{self.format}"
        self.interactive_mode = interactive_mode


    def to_dict(self) -> dict:
        """Every field, for output headers and metadata."""
        return {key: getattr(self, key) for key in list(SCENARIO_FIELDS) + ["interactive_mode"]}
