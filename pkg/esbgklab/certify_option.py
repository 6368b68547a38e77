from typing import Sequence, Tuple
from .utils import NU_GRID


class CertifyOption:
    """Options for the randomized certification of the entropy inequalities.

    Controls the ensemble, the velocity grid, the tolerances and the execution of
    :func:`certify_ensemble`. Each of ``count`` seeded Gaussian mixtures is
    sampled on its own ``grid_n``-point grid, sized to hold every component to
    ``n_sigma`` standard deviations, and checked at every value of
    ``nu_values``. See :ref:`certification` for usage examples.

    Args:
        count (int): Number of random mixtures. Zero gives an empty report.
            Defaults to 1000.
        seed (int): Ensemble seed; it fully determines the ensemble. Defaults to 42.
        grid_n (int): Grid points per velocity axis. Defaults to 48.
        nu_values (Sequence[float]): Values of nu to check. Defaults to the grid
            (-0.45, -0.4, -0.25, -0.1, 0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95).
        sigma (float): Constant collision frequency, so ``A_nu = sigma / (1 - nu)``.
            Defaults to 3.0.
        truncation_levels (Sequence[float]): Levels ``R`` of the truncation split.
            Defaults to (1.1, e, 10).
        tolerance (float): Relative tolerance of quadrature-limited checks (the
            production bound, the remainder consistency, the entropy of ``f``
            against the Gaussians, the Kullback inequality). Defaults to 1e-6.
        exact_tolerance (float): Tolerance of closed-form checks and of the
            pointwise truncation split. Defaults to 1e-12.
        remainder_tolerance (float): Allowance of ``nu R_nu >= -tol A_nu rho``.
            Defaults to 1e-10.
        split_tolerance (float): Tolerance of the reconstruction of the entropy
            production from its parts. Defaults to 1e-8.
        n_sigma (float): Standard deviations held by each grid. Defaults to 8.
        components (Tuple[int, int]): Range of mixture components. Defaults to (2, 4).
        mean_range (float): Half-width of the box of component means. Defaults to 1.
        eig_range (Tuple[float, float]): Range of covariance eigenvalues.
            Defaults to (0.3, 2.0).
        log_floor (bool): Whether to floor ``f`` at 1e-300 inside logarithms. The
            far corners of a grid sized for the widest component underflow for
            narrow components, so this defaults to True.
        workers (int): Number of worker threads. Defaults to 1.
        interactive_mode (bool): Whether to print status messages and a progress
            bar. Defaults to False.

    Attributes:
        Same names as the arguments.

    Examples:
        >>> from esbgklab import CertifyOption, certify_ensemble
        >>> option = CertifyOption(count = 50, seed = 7, grid_n = 32, interactive_mode = True)
        >>> report = certify_ensemble(option)
        >>> report.passed
        True
    """
    def __init__(
        self,
        count: int = 1000,
        seed: int = 42,
        grid_n: int = 48,
        nu_values: Sequence[float] = NU_GRID,
        sigma: float = 3.0,
        truncation_levels: Sequence[float] = (1.1, 2.718281828459045, 10.0),
        tolerance: float = 1e-6,
        exact_tolerance: float = 1e-12,
        remainder_tolerance: float = 1e-10,
        split_tolerance: float = 1e-8,
        n_sigma: float = 8.0,
        components: Tuple[int, int] = (2, 4),
        mean_range: float = 1.0,
        eig_range: Tuple[float, float] = (0.3, 2.0),
        log_floor: bool = True,
        workers: int = 1,
        interactive_mode: bool = False
    ):
        self.count = count
        self.seed = seed
        self.grid_n = grid_n
        self.nu_values = tuple(float(nu) for nu in nu_values)
        self.sigma = sigma
        self.truncation_levels = tuple(float(R) for R in truncation_levels)
        self.tolerance = tolerance
        self.exact_tolerance = exact_tolerance
        self.remainder_tolerance = remainder_tolerance
        self.split_tolerance = split_tolerance
        self.n_sigma = n_sigma
        self.components = tuple(components)
        self.mean_range = mean_range
        self.eig_range = tuple(eig_range)
        self.log_floor = log_floor
        self.workers = workers
        self.interactive_mode = interactive_mode


    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "grid_n": self.grid_n,
            "nu_values": list(self.nu_values),
            "sigma": self.sigma,
            "truncation_levels": list(self.truncation_levels),
            "tolerance": self.tolerance,
            "exact_tolerance": self.exact_tolerance,
            "remainder_tolerance": self.remainder_tolerance,
            "split_tolerance": self.split_tolerance,
            "n_sigma": self.n_sigma,
            "components": list(self.components),
            "mean_range": self.mean_range,
            "eig_range": list(self.eig_range),
            "log_floor": self.log_floor
        }
