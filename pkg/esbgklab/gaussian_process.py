from dataclasses import dataclass
import numpy as np
from .moment_main import MacroState
from .moment_process import SymMat3, eigendecompose, det3
from .gaussian_validate import _validate_positive_definite


LOG_2PI = float(np.log(2.0 * np.pi))


@dataclass(frozen=True)
class TemperatureTensor:
    """The ellipsoidal temperature tensor ``T_nu = (1-nu) T Id + nu Theta``.

    ``T_nu`` and ``Theta`` share the eigenvectors ``P``, so the eigenvalues are
    ``(1-nu) T + nu theta_i`` in the order of the eigenvalues ``theta`` of Theta.
    That order is descending for ``nu >= 0`` and ascending for ``nu < 0``.

    Attributes:
        nu (float): The ellipsoidal parameter.
        value (SymMat3): The tensor.
        P (np.ndarray): Orthogonal eigenvector matrix (columns).
        eigenvalues (np.ndarray): Eigenvalues of the tensor, matching ``theta``.
        theta (np.ndarray): Eigenvalues of Theta, descending.
        T (float): The temperature.
    """
    nu: float
    value: SymMat3
    P: np.ndarray
    eigenvalues: np.ndarray
    theta: np.ndarray
    T: float


    def det(self) -> float:
        """Determinant through the eigenvalue product."""
        return float(np.prod(self.eigenvalues))


    def det_direct(self) -> float:
        """Determinant computed directly from the matrix entries."""
        return det3(self.value)


    def inverse(self) -> SymMat3:
        return SymMat3.from_matrix((self.P / self.eigenvalues) @ self.P.T)


    def log_det(self) -> float:
        return float(np.sum(np.log(self.eigenvalues)))



def _build_tensor(state: MacroState, nu: float, function: str = "temperature_tensor") -> TemperatureTensor:
    P, theta = eigendecompose(state.Theta)
    T = state.T
    eigenvalues = (1.0 - nu) * T + nu * theta
    _validate_positive_definite(eigenvalues, T, function)
    value = SymMat3.identity((1.0 - nu) * T) + state.Theta.scaled(nu)
    return TemperatureTensor(
        nu=float(nu),
        value=value,
        P=P,
        eigenvalues=eigenvalues,
        theta=theta,
        T=T
    )



def _log_norm(rho: float, eigenvalues: np.ndarray) -> float:
    """``ln(rho) - 1/2 ln det(2 pi T_nu)``."""
    return float(np.log(rho) - 1.5 * LOG_2PI - 0.5 * np.sum(np.log(eigenvalues)))



def _quadratic_form(v: np.ndarray, U: np.ndarray, P: np.ndarray, eigenvalues: np.ndarray) -> np.ndarray:
    """``(v-U)^T T_nu^{-1} (v-U)`` evaluated in the eigenbasis, row-wise."""
    y = (np.atleast_2d(v) - U) @ P
    return np.sum(y * y / eigenvalues, axis=1)



def _dilated(tensor: TemperatureTensor, scale: float) -> TemperatureTensor:
    """The tensor ``scale * T_nu`` with the same eigenvectors and parameter."""
    return TemperatureTensor(
        nu=tensor.nu,
        value=tensor.value.scaled(scale),
        P=tensor.P,
        eigenvalues=tensor.eigenvalues * scale,
        theta=tensor.theta * scale,
        T=tensor.T * scale
    )



def _moment_residual(state: MacroState, target: MacroState) -> np.ndarray:
    """Scaled mismatch of (rho, U, T) between a sampled state and its target."""
    return np.concatenate([
        [(state.rho - target.rho) / target.rho],
        (state.U - target.U) / np.sqrt(target.T),
        [(state.T - target.T) / target.T]
    ])
