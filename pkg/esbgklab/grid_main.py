from typing import Callable, Optional, Sequence, Union
import numpy as np
from .utils import KineticError
from .grid_validate import _validate_grid_params, _validate_values, _validate_same_grid


class VelocityGrid:
    """A truncated, uniform, cell-centered 3D velocity grid.

    Nodes are the cell midpoints of the cube ``offset + [-v_max, v_max]^3`` split
    into ``n_per_axis`` cells per axis. Node ``(k1, k2, k3)`` sits at
    ``offset + (-v_max + (k_i + 1/2) h)`` and nodes are stored flat in
    lexicographic ``(k1, k2, k3)`` order, the order used by every output file.
    Every node carries the same quadrature weight ``h^3`` (midpoint rule). Grids
    are immutable; use :meth:`shifted` to move the center. Build with
    :func:`build_grid`.

    Args:
        n_per_axis (int): Points per axis (at least 2).
        v_max (float): Half-width of the velocity cube.
        offset (Optional[Sequence[float]]): Grid center. Defaults to the origin.

    Attributes:
        n_per_axis (int): Points per axis.
        v_max (float): Half-width of the cube.
        offset (np.ndarray): Grid center, shape (3,).
        h (float): Spacing ``2 v_max / n_per_axis``.
        weight (float): Quadrature weight per node, ``h^3``.
        axis (np.ndarray): Centered node coordinates along one axis.
        velocities (np.ndarray): Read-only node velocities, shape (n^3, 3).
    """
    def __init__(
        self,
        n_per_axis: int,
        v_max: float,
        offset: Optional[Sequence[float]] = None
    ):
        self.n_per_axis = int(n_per_axis)
        self.v_max = float(v_max)
        self.offset = np.zeros(3) if offset is None else np.asarray(offset, dtype=float).reshape(3).copy()
        self.offset.setflags(write=False)
        self.h = 2.0 * self.v_max / self.n_per_axis
        self.weight = self.h ** 3
        self.axis = -self.v_max + (np.arange(self.n_per_axis) + 0.5) * self.h
        self.axis.setflags(write=False)
        v1, v2, v3 = np.meshgrid(self.axis, self.axis, self.axis, indexing="ij")
        self.velocities = np.stack([v1.ravel(), v2.ravel(), v3.ravel()], axis=1) + self.offset
        self.velocities.setflags(write=False)


    @property
    def size(self) -> int:
        """Total number of nodes, ``n_per_axis ** 3``."""
        return self.n_per_axis ** 3


    def node_index(self, k1: int, k2: int, k3: int) -> int:
        """Flat index of node ``(k1, k2, k3)`` in lexicographic order."""
        n = self.n_per_axis
        return (k1 * n + k2) * n + k3


    def node_velocity(self, k1: int, k2: int, k3: int) -> np.ndarray:
        """Velocity of node ``(k1, k2, k3)``."""
        return self.velocities[self.node_index(k1, k2, k3)]


    def shifted(self, shift: Sequence[float]) -> "VelocityGrid":
        """Return the same grid with its center moved by ``shift``."""
        return VelocityGrid(self.n_per_axis, self.v_max, self.offset + np.asarray(shift, dtype=float))


    def same_as(self, other: "VelocityGrid") -> bool:
        """Whether ``other`` has identical size, half-width and center."""
        return (
            self is other
            or (
                self.n_per_axis == other.n_per_axis
                and self.v_max == other.v_max
                and np.array_equal(self.offset, other.offset)
            )
        )


    def __repr__(self) -> str:
        return f"VelocityGrid(n_per_axis={self.n_per_axis}, v_max={self.v_max:g}, offset={self.offset.tolist()})"



class DistributionFunction:
    """Nonnegative values of a distribution function on a :class:`VelocityGrid`.

    Values are copied, validated (finite, nonnegative, one per node) and frozen.
    Distributions produced by :func:`esbgklab.evaluate_gaussian` remember the
    Gaussian they were sampled from in ``source``; :func:`esbgklab.conservation_correct`
    relies on it.

    Args:
        grid (VelocityGrid): The velocity grid.
        values (np.ndarray): Node values, any shape with ``grid.size`` elements.
        source (Optional[object]): Generating Gaussian, if any. Defaults to None.

    Attributes:
        grid (VelocityGrid): The velocity grid.
        values (np.ndarray): Read-only flat node values.
        source (Optional[object]): Generating Gaussian, if any.

    Raises:
        KineticError: If a value is negative or not finite, or the size is wrong.
    """
    def __init__(
        self,
        grid: VelocityGrid,
        values: np.ndarray,
        source: Optional[object] = None
    ):
        values = np.array(values, dtype=float).reshape(-1)
        _validate_values(values, grid.size, "DistributionFunction")
        values.setflags(write=False)
        self.grid = grid
        self.values = values
        self.source = source


    def mass(self) -> float:
        """Discrete mass ``sum_k w f[k]``."""
        return quadrature(self, 1.0)


    def scaled(self, factor: float) -> "DistributionFunction":
        """Return ``factor * f`` on the same grid."""
        return DistributionFunction(self.grid, factor * self.values)


    def on_grid(self, grid: VelocityGrid) -> "DistributionFunction":
        """Carry the node values to another grid with the same node count.

        Used with :meth:`VelocityGrid.shifted` to translate a distribution by a
        grid-commensurate velocity.
        """
        if grid.size != self.grid.size:
            raise KineticError("Target grid has a different node count", function="DistributionFunction.on_grid")
        return DistributionFunction(grid, self.values)


    def __repr__(self) -> str:
        return f"DistributionFunction({self.grid!r}, mass={self.mass():.6g})"



def build_grid(
    n_per_axis: int,
    v_max: float,
    offset: Optional[Sequence[float]] = None
) -> VelocityGrid:
    """Build a truncated uniform velocity grid with the midpoint quadrature rule.

    Args:
        n_per_axis (int): Points per axis. Must be an integer >= 2.
        v_max (float): Half-width of the cube ``[-v_max, v_max]^3``. Must be positive.
        offset (Optional[Sequence[float]]): Grid center. Defaults to the origin.

    Returns:
        :class:`VelocityGrid`: The grid, with spacing ``h = 2 v_max / n_per_axis``
            and node weight ``h^3``.

    Raises:
        :class:`ValueError`: If ``n_per_axis < 2`` or ``v_max <= 0``.

    Examples:
        >>> from esbgklab import build_grid
        >>> grid = build_grid(n_per_axis = 64, v_max = 8.0)
        >>> grid.h, grid.weight
        (0.25, 0.015625)
    """
    _validate_grid_params(n_per_axis, v_max)
    return VelocityGrid(n_per_axis, v_max, offset)



def quadrature(
    f: DistributionFunction,
    phi: Union[float, np.ndarray, Callable[[np.ndarray], np.ndarray], DistributionFunction] = 1.0
) -> Union[float, np.ndarray]:
    """Integrate ``f * phi`` over the velocity grid with the midpoint rule.

    Args:
        f (DistributionFunction): The distribution function.
        phi: The test function. A scalar, an array whose leading axis is
            node-indexed (shape ``(n^3,)`` or ``(n^3, ...)``), a callable mapping
            node velocities of shape ``(n^3, 3)`` to such an array, or another
            :class:`DistributionFunction` on the same grid. Defaults to 1.

    Returns:
        float or np.ndarray: ``sum_k w f[k] phi[k]``, with the trailing shape of phi.

    Raises:
        :class:`KineticError`: If phi lives on another grid or has the wrong length.

    Examples:
        >>> grid = build_grid(2, 1.0)
        >>> quadrature(DistributionFunction(grid, np.ones(8)))
        8.0
    """
    grid = f.grid
    if isinstance(phi, DistributionFunction):
        _validate_same_grid(grid, phi.grid, "quadrature")
        phi = phi.values
    elif callable(phi):
        phi = phi(grid.velocities)
    phi = np.asarray(phi, dtype=float)
    if phi.ndim == 0:
        return float(grid.weight * phi * f.values.sum())
    if phi.shape[0] != grid.size:
        raise KineticError(
            f"Test function has {phi.shape[0]} nodes but the grid has {grid.size}",
            function="quadrature"
        )
    result = grid.weight * np.tensordot(f.values, phi, axes=(0, 0))
    return float(result) if np.ndim(result) == 0 else result



def sample_distribution(
    grid: VelocityGrid,
    density: Callable[[np.ndarray], np.ndarray]
) -> DistributionFunction:
    """Sample a density function at the grid nodes.

    Args:
        grid (VelocityGrid): The velocity grid.
        density (Callable): Maps velocities of shape ``(n^3, 3)`` to values ``(n^3,)``.

    Returns:
        :class:`DistributionFunction`: The sampled values.
    """
    return DistributionFunction(grid, density(grid.velocities))



def fit_velocity_domain(
    means: Sequence[Sequence[float]],
    covariances: Sequence[np.ndarray],
    n_sigma: float = 8.0
) -> float:
    """Half-width that holds every Gaussian component to ``n_sigma`` deviations.

    Returns ``max_k (|U_k| + n_sigma * sqrt(lambda_max(C_k)))``; with the
    default ``n_sigma = 8`` the Gaussian tail mass outside the cube is below
    ``1e-12``.

    Args:
        means (Sequence): Component mean velocities.
        covariances (Sequence[np.ndarray]): Component 3x3 covariance matrices.
        n_sigma (float): Number of standard deviations. Defaults to 8.

    Returns:
        float: The velocity half-width ``v_max``.
    """
    reach = [
        float(np.linalg.norm(mean)) + n_sigma * float(np.sqrt(np.linalg.eigvalsh(np.asarray(cov, dtype=float)).max()))
        for mean, cov in zip(means, covariances)
    ]
    if not reach:
        raise ValueError("At least one component is required to size the velocity domain.")
    return max(reach)
