from typing import Optional, Sequence
import numpy as np
from scipy import optimize
from .utils import KineticError
from .grid_main import VelocityGrid, DistributionFunction
from .moment_main import MacroState, _moments
from .moment_process import SymMat3, eigendecompose
from .gaussian_validate import _validate_nu, _validate_interior
from .gaussian_process import (
    TemperatureTensor, _build_tensor, _log_norm, _quadratic_form, _dilated, _moment_residual
)


class EllipsoidalGaussian:
    """The ellipsoidal Gaussian with density ``rho``, mean ``U`` and covariance ``T_nu``.

    Its density is ``rho / sqrt(det(2 pi T_nu)) * exp(-1/2 (v-U)^T T_nu^{-1} (v-U))``,
    strictly positive everywhere, with continuum moments exactly ``(rho, U, T_nu)``.
    The special cases ``nu = 0`` and ``nu = 1`` are the local Maxwellian and the
    multivariate Gaussian. Build with :func:`ellipsoidal_gaussian`.

    Args:
        rho (float): Mass density.
        U (Sequence[float]): Mean velocity.
        Tnu (TemperatureTensor): Covariance tensor with its eigen-decomposition.

    Attributes:
        rho (float): Mass density.
        U (np.ndarray): Mean velocity.
        Tnu (TemperatureTensor): Covariance tensor.
        log_norm (float): ``ln(rho) - 1/2 ln det(2 pi T_nu)``.
    """
    def __init__(self, rho: float, U: Sequence[float], Tnu: TemperatureTensor):
        self.rho = float(rho)
        self.U = np.asarray(U, dtype=float).reshape(3).copy()
        self.Tnu = Tnu
        self.log_norm = _log_norm(self.rho, Tnu.eigenvalues)


    def log_density(self, v: np.ndarray) -> np.ndarray:
        """Natural logarithm of the density at velocities ``v`` of shape (m, 3)."""
        return self.log_norm - 0.5 * _quadratic_form(v, self.U, self.Tnu.P, self.Tnu.eigenvalues)


    def density(self, v: np.ndarray) -> np.ndarray:
        return np.exp(self.log_density(v))


    def __repr__(self) -> str:
        return (
            f"EllipsoidalGaussian(rho={self.rho:.6g}, U={self.U.tolist()}, "
            f"nu={self.Tnu.nu:g}, eigenvalues={self.Tnu.eigenvalues.tolist()})"
        )



def temperature_tensor(state: MacroState, nu: float) -> TemperatureTensor:
    """Build the temperature tensor ``T_nu = (1-nu) T Id + nu Theta``.

    The eigenvalues are formed as ``(1-nu) T + nu theta_i`` from the
    eigen-decomposition of Theta; the two tensors commute, so this is exact.

    Args:
        state (MacroState): The macroscopic fields.
        nu (float): Ellipsoidal parameter in the open interval (-1/2, 1).

    Returns:
        :class:`TemperatureTensor`: The tensor and its eigen-decomposition.

    Raises:
        :class:`ValueError`: If nu lies outside (-1/2, 1).
        :class:`KineticError`: If the tensor is not positive definite, which requires a
            degenerate Theta.

    Examples:
        >>> from esbgklab import MacroState, SymMat3, temperature_tensor
        >>> state = MacroState.from_fields(1.0, [0, 0, 0], 1.0, SymMat3.diagonal([2.0, 0.5, 0.5]))
        >>> temperature_tensor(state, 0.5).value.entries()
        (1.5, 0.75, 0.75, 0.0, 0.0, 0.0)
    """
    _validate_nu(nu)
    return _build_tensor(state, nu)



def ellipsoidal_gaussian(state: MacroState, nu: float) -> EllipsoidalGaussian:
    """The ellipsoidal Gaussian ``M_nu`` of a macroscopic state."""
    return EllipsoidalGaussian(state.rho, state.U, temperature_tensor(state, nu))



def local_maxwellian(state: MacroState) -> EllipsoidalGaussian:
    """The local Maxwellian ``M_0``, isotropic with temperature ``T``."""
    return EllipsoidalGaussian(state.rho, state.U, _build_tensor(state, 0.0, "local_maxwellian"))



def multivariate_gaussian(state: MacroState) -> EllipsoidalGaussian:
    """The multivariate Gaussian ``M_1`` with covariance Theta.

    Raises:
        :class:`KineticError`: If the state is a boundary state, with
            ``min theta_i <= 1e-10 T``.
    """
    _validate_interior(eigendecompose(state.Theta)[1], state.T, "multivariate_gaussian")
    tensor = _build_tensor(state, 1.0, "multivariate_gaussian")
    return EllipsoidalGaussian(state.rho, state.U, tensor)



def gaussian_from_covariance(
    rho: float,
    U: Sequence[float],
    covariance: np.ndarray
) -> EllipsoidalGaussian:
    """A Gaussian with arbitrary positive-definite covariance.

    Args:
        rho (float): Mass, positive.
        U (Sequence[float]): Mean velocity.
        covariance (np.ndarray): Symmetric 3x3 covariance matrix.

    Returns:
        :class:`EllipsoidalGaussian`: The Gaussian, stored with ``nu = 1``.
    """
    Theta = SymMat3.from_matrix(covariance)
    state = MacroState.from_fields(rho, U, Theta.trace() / 3.0, Theta)
    return EllipsoidalGaussian(rho, U, _build_tensor(state, 1.0, "gaussian_from_covariance"))



def evaluate_gaussian(g: EllipsoidalGaussian, grid: VelocityGrid) -> DistributionFunction:
    """Sample an ellipsoidal Gaussian at the nodes of a velocity grid.

    The quadratic form is evaluated in the eigenbasis, ``sum_i y_i^2 / lambda_i``
    with ``y = P^T (v - U)``, so ``T_nu^{-1}`` is never formed. The returned
    distribution remembers ``g`` as its source.

    Args:
        g (EllipsoidalGaussian): The Gaussian.
        grid (VelocityGrid): The velocity grid.

    Returns:
        :class:`DistributionFunction`: Strictly positive node values (up to underflow
            far in the tails).

    Examples:
        >>> from esbgklab import build_grid, MacroState, local_maxwellian, evaluate_gaussian
        >>> grid = build_grid(48, 8.0)
        >>> M0 = evaluate_gaussian(local_maxwellian(MacroState.from_fields(1.0, [0, 0, 0], 1.0)), grid)
        >>> round(M0.mass(), 8)
        1.0
    """
    return DistributionFunction(grid, g.density(grid.velocities), source=g)



def gaussian_entropy_closed_form(g: EllipsoidalGaussian) -> float:
    """Closed-form entropy ``rho ln(rho / sqrt(det(2 pi T_nu))) - 3/2 rho``.

    Examples:
        >>> from esbgklab import MacroState, local_maxwellian, gaussian_entropy_closed_form
        >>> round(gaussian_entropy_closed_form(local_maxwellian(MacroState.from_fields(1.0, [0, 0, 0], 1.0))), 9)
        -4.256815599
    """
    return g.rho * g.log_norm - 1.5 * g.rho



def entropy_gap_closed_form(state: MacroState, nu: float) -> float:
    """``H(M_0) - H(M_nu) = 1/2 rho ln(det T_nu / T^3)``, through the eigenvalue product.

    Nonpositive: the Maxwellian has the least entropy among the ellipsoidal Gaussians
    with the same density, velocity and temperature.
    """
    tensor = temperature_tensor(state, nu)
    return 0.5 * state.rho * float(np.sum(np.log(tensor.eigenvalues / state.T)))



def gaussian_gap_bound(state: MacroState, nu: float) -> float:
    """Lower bound ``max{nu, -2 nu} (H(M_0) - H(M_1))`` on :func:`entropy_gap_closed_form`.

    ``H(M_0) - H(M_1) = 1/2 rho ln(det Theta / T^3)``; the bound is tight at
    ``nu = 0`` and at isotropy.

    Raises:
        :class:`KineticError`: If the state is a boundary state.
    """
    _validate_nu(nu)
    theta = eigendecompose(state.Theta)[1]
    _validate_interior(theta, state.T, "gaussian_gap_bound")
    gap_1 = 0.5 * state.rho * float(np.sum(np.log(theta / state.T)))
    return max(nu, -2.0 * nu) * gap_1



def conservation_correct(
    f_M: DistributionFunction,
    target: MacroState,
    tol: float = 1e-12,
    max_iter: int = 50
) -> DistributionFunction:
    """Restore discrete conservation of a sampled Gaussian.

    Replaces ``f_M(v)`` by ``c f_M(a (v - b))`` with a mass factor ``c``, a
    velocity shift ``b`` and an isotropic dilation ``a`` chosen so that the
    discrete ``(rho, U, T)`` match ``target``. For a Gaussian this is again a
    Gaussian with ``rho' = c rho / a^3``, ``U' = b + U / a`` and
    ``T_nu' = T_nu / a^2``, so the corrected values are re-sampled, not
    interpolated. The five parameters are fitted with :func:`scipy.optimize.root`.
    The anisotropy of the stress tensor moves only at quadrature-error order.

    Args:
        f_M (DistributionFunction): A Gaussian sampled with :func:`evaluate_gaussian`.
        target (MacroState): Target density, velocity and temperature.
        tol (float): Scaled moment tolerance. Defaults to 1e-12.
        max_iter (int): Iteration budget of the fit. Defaults to 50.

    Returns:
        :class:`DistributionFunction`: The corrected Gaussian, or ``f_M`` itself if it
            already matches.

    Raises:
        :class:`KineticError`: If ``f_M`` was not sampled from a Gaussian, or the fit
            does not converge (an under-resolved grid).
    """
    g = f_M.source
    if not isinstance(g, EllipsoidalGaussian):
        raise KineticError("Conservation correction needs a sampled Gaussian", function="conservation_correct")
    grid = f_M.grid

    def reparametrized(x: np.ndarray) -> EllipsoidalGaussian:
        c, a = np.exp(x[0]), np.exp(x[4])
        return EllipsoidalGaussian(c * g.rho / a ** 3, x[1:4] + g.U / a, _dilated(g.Tnu, 1.0 / a ** 2))

    def residual(x: np.ndarray) -> np.ndarray:
        candidate = reparametrized(x)
        state = _moments(grid, candidate.density(grid.velocities), "conservation_correct")
        return _moment_residual(state, target)

    x0 = np.zeros(5)
    if np.max(np.abs(residual(x0))) <= tol:
        return f_M
    solution = optimize.root(residual, x0, method="hybr", options={"xtol": 1e-15, "maxfev": max_iter * 6})
    error = float(np.max(np.abs(residual(solution.x))))
    if error > tol:
        raise KineticError(
            "Conservation fit did not converge; the velocity grid may be under-resolved",
            function="conservation_correct",
            quantity="moment residual",
            value=error
        )
    return evaluate_gaussian(reparametrized(solution.x), grid)
