from dataclasses import dataclass
import numpy as np
from .utils import KineticError
from .grid_main import VelocityGrid, DistributionFunction
from .moment_process import SymMat3


@dataclass(frozen=True)
class MacroState:
    """Macroscopic fields of a distribution function.

    ``Theta`` follows the per-unit-density convention, ``rho * Theta`` being the
    second central moment, so it has temperature units and ``trace(Theta) = 3 T``.

    Attributes:
        rho (float): Mass density, positive.
        U (np.ndarray): Bulk velocity, shape (3,).
        T (float): Temperature, positive.
        Theta (SymMat3): Stress tensor, positive semidefinite.
    """
    rho: float
    U: np.ndarray
    T: float
    Theta: SymMat3


    @classmethod
    def from_fields(cls, rho: float, U, T: float, Theta=None) -> "MacroState":
        """Build a state from explicit fields; ``Theta`` defaults to ``T * Id``.

        The temperature is kept consistent with the stress tensor: if ``Theta``
        is given, ``T`` must equal ``trace(Theta) / 3`` to 1e-10 relative.
        """
        Theta = SymMat3.identity(T) if Theta is None else (
            Theta if isinstance(Theta, SymMat3) else SymMat3.from_matrix(Theta)
        )
        if rho <= 0 or T <= 0:
            raise ValueError(f"rho and T must be positive, got rho={rho}, T={T}.")
        if abs(Theta.trace() - 3.0 * T) > 1e-10 * 3.0 * T:
            raise ValueError(f"trace(Theta)={Theta.trace():.12g} does not equal 3T={3.0 * T:.12g}.")
        return cls(float(rho), np.asarray(U, dtype=float).reshape(3).copy(), float(T), Theta)



def _moments(grid: VelocityGrid, values: np.ndarray, function: str) -> MacroState:
    """Moments of raw node values, without the nonnegativity check.

    Runge-Kutta stages may carry rounding-level negative values; they are
    allowed here and rejected only on the accepted step.
    """
    w = grid.weight
    rho = w * float(values.sum())
    if not rho > 0:
        raise KineticError(
            "Distribution has no mass; moments are not realizable",
            function=function,
            quantity="rho",
            value=rho
        )
    v = grid.velocities
    U = w * (values @ v) / rho
    c = v - U
    second = w * (c.T @ (values[:, None] * c)) / rho
    Theta = SymMat3.from_matrix(second)
    T = Theta.trace() / 3.0
    if not T > 0:
        raise KineticError(
            "Non-positive temperature after quadrature; moments are not realizable",
            function=function,
            quantity="T",
            value=T
        )
    return MacroState(rho=rho, U=U, T=T, Theta=Theta)



def extract_moments(f: DistributionFunction) -> MacroState:
    """Extract density, bulk velocity, temperature and stress tensor from ``f``.

    With ``w`` the node weight, computes ``rho = sum w f``, ``rho U = sum w f v``,
    ``rho Theta = sum w f (v-U)(v-U)^T`` and ``T = trace(Theta) / 3``, so the
    trace identity holds exactly.

    Args:
        f (DistributionFunction): The distribution function.

    Returns:
        :class:`MacroState`: The macroscopic fields.

    Raises:
        :class:`KineticError`: If the discrete mass is zero or the temperature is not
            positive (a single-node concentration).

    Examples:
        >>> from esbgklab import build_grid, extract_moments, local_maxwellian, evaluate_gaussian
        >>> grid = build_grid(48, 8.0)
        >>> f = evaluate_gaussian(local_maxwellian(MacroState.from_fields(1.0, [0, 0, 0], 1.0)), grid)
        >>> state = extract_moments(f)
        >>> round(state.rho, 6), round(state.T, 6)
        (1.0, 1.0)
    """
    return _moments(f.grid, f.values, "extract_moments")
