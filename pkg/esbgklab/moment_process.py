from typing import Optional, Sequence, Tuple
import numpy as np
from .utils import KineticError, EPS_PD


_JACOBI_PAIRS = ((0, 1), (0, 2), (1, 2))


class SymMat3:
    """A symmetric 3x3 matrix stored by its six independent entries.

    Symmetry is structural: only ``xx, yy, zz, xy, xz, yz`` are stored. Used for
    the stress tensor, the temperature tensor and their inverses.

    Args:
        xx, yy, zz (float): Diagonal entries.
        xy, xz, yz (float): Off-diagonal entries. Default to 0.

    Examples:
        >>> SymMat3.diagonal([2.0, 0.5, 0.5]).trace()
        3.0
    """
    __slots__ = ("xx", "yy", "zz", "xy", "xz", "yz")

    def __init__(
        self,
        xx: float,
        yy: float,
        zz: float,
        xy: float = 0.0,
        xz: float = 0.0,
        yz: float = 0.0
    ):
        self.xx = float(xx)
        self.yy = float(yy)
        self.zz = float(zz)
        self.xy = float(xy)
        self.xz = float(xz)
        self.yz = float(yz)


    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "SymMat3":
        """Build from a 3x3 array, averaging the off-diagonal pairs."""
        m = np.asarray(matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"Expected a 3x3 matrix, got shape {m.shape}.")
        return cls(
            m[0, 0], m[1, 1], m[2, 2],
            0.5 * (m[0, 1] + m[1, 0]),
            0.5 * (m[0, 2] + m[2, 0]),
            0.5 * (m[1, 2] + m[2, 1])
        )


    @classmethod
    def identity(cls, scale: float = 1.0) -> "SymMat3":
        return cls(scale, scale, scale)


    @classmethod
    def diagonal(cls, entries: Sequence[float]) -> "SymMat3":
        d = [float(x) for x in entries]
        return cls(d[0], d[1], d[2])


    def to_matrix(self) -> np.ndarray:
        return np.array([
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz]
        ])


    def entries(self) -> Tuple[float, float, float, float, float, float]:
        """The six stored entries in the order ``xx, yy, zz, xy, xz, yz``."""
        return (self.xx, self.yy, self.zz, self.xy, self.xz, self.yz)


    def trace(self) -> float:
        return self.xx + self.yy + self.zz


    def scaled(self, factor: float) -> "SymMat3":
        return SymMat3(*(factor * e for e in self.entries()))


    def __add__(self, other: "SymMat3") -> "SymMat3":
        return SymMat3(*(a + b for a, b in zip(self.entries(), other.entries())))


    def __sub__(self, other: "SymMat3") -> "SymMat3":
        return SymMat3(*(a - b for a, b in zip(self.entries(), other.entries())))


    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymMat3) and self.entries() == other.entries()


    def __repr__(self) -> str:
        return "SymMat3(" + ", ".join(f"{k}={getattr(self, k):.6g}" for k in self.__slots__) + ")"



def eigendecompose(
    M: SymMat3,
    max_sweeps: int = 15,
    tol: float = 1e-13
) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.

    Sweeps the off-diagonal pairs (0,1), (0,2), (1,2) in fixed order, zeroing
    each with one rotation, until the off-diagonal norm falls below
    ``tol * max|M_ij|``. Eigenvalues are sorted descending (stable for ties) and
    each eigenvector is signed so that its first nonzero component is positive,
    so identical inputs give identical outputs.

    Args:
        M (SymMat3): The matrix.
        max_sweeps (int): Sweep limit. Defaults to 15.
        tol (float): Relative off-diagonal tolerance. Defaults to 1e-13.

    Returns:
        Tuple[np.ndarray, np.ndarray]: ``(P, lam)`` with ``P`` orthogonal (columns
            are eigenvectors) and ``lam`` descending, so that
            ``P @ diag(lam) @ P.T`` reconstructs ``M``.

    Examples:
        >>> P, lam = eigendecompose(SymMat3.diagonal([2.0, 0.5, 0.5]))
        >>> lam
        array([2. , 0.5, 0.5])
    """
    a = M.to_matrix()
    p = np.eye(3)
    scale = float(np.abs(a).max())
    if scale > 0:
        for _ in range(max_sweeps):
            off = np.sqrt(a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2)
            if off <= tol * scale:
                break
            for i, j in _JACOBI_PAIRS:
                if a[i, j] == 0.0:
                    continue
                theta = (a[j, j] - a[i, i]) / (2.0 * a[i, j])
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(3)
                rot[i, i] = c
                rot[j, j] = c
                rot[i, j] = s
                rot[j, i] = -s
                a = rot.T @ a @ rot
                a[i, j] = a[j, i] = 0.0
                p = p @ rot
    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    p = p[:, order]
    for k in range(3):
        nonzero = np.flatnonzero(np.abs(p[:, k]) > 1e-14)
        if nonzero.size and p[nonzero[0], k] < 0:
            p[:, k] = -p[:, k]
    return p, lam



def det3(M: SymMat3) -> float:
    """Determinant of a symmetric 3x3 matrix."""
    return float(np.linalg.det(M.to_matrix()))



def inverse3(M: SymMat3, t_ref: Optional[float] = None) -> SymMat3:
    """Inverse of a positive-definite symmetric 3x3 matrix.

    The matrix must pass the positive-definite gate: every eigenvalue larger than
    ``EPS_PD * t_ref``. The inverse is assembled in the eigenbasis,
    ``P diag(1/lam) P^T``, which keeps it exactly symmetric.

    Args:
        M (SymMat3): The matrix.
        t_ref (Optional[float]): Reference scale of the gate. Defaults to
            ``|trace(M)| / 3`` (the temperature, for stress-like tensors).

    Returns:
        :class:`SymMat3`: The inverse.

    Raises:
        :class:`KineticError`: If the matrix is singular or indefinite; the message
            carries the minimum eigenvalue.
    """
    if t_ref is None:
        t_ref = abs(M.trace()) / 3.0
    p, lam = eigendecompose(M)
    if lam[-1] <= EPS_PD * t_ref or t_ref <= 0:
        raise KineticError(
            "Matrix is singular or indefinite",
            function="inverse3",
            quantity="min eigenvalue",
            value=float(lam[-1])
        )
    return SymMat3.from_matrix((p / lam) @ p.T)
