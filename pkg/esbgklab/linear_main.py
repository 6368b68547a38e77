from dataclasses import dataclass
from typing import Dict, Iterable, Tuple, Union
import numpy as np
from .grid_main import VelocityGrid
from .gaussian_validate import _validate_nu


_BASIS_CACHE: Dict[Tuple, "LinearizedBasis"] = {}

BLOCKS = ("B0", "B1", "B2")


class LinearizedBasis:
    """Orthonormal bases of the blocks of the linearized relaxation operator.

    Around the global Maxwellian ``m = (2 pi)^{-3/2} exp(-|v|^2 / 2)`` a
    perturbation is written ``f = m + sqrt(m) g``. The generators
    ``1, v1, v2, v3, |v|^2`` (block B0), ``3 v_i^2 - |v|^2`` (block B1) and
    ``v_i v_j, i < j`` (block B2), each times ``sqrt(m)``, are orthonormalized in
    this fixed order by modified Gram-Schmidt under the discrete inner product
    ``<a, b> = sum_k w a[k] b[k]``. A generator whose residual falls below 1e-8
    of its norm is discarded; the three B1 generators sum to zero, so B1 keeps
    two vectors. Prefer :func:`get_basis`, which caches per grid.

    Args:
        grid (VelocityGrid): The velocity grid.

    Attributes:
        grid (VelocityGrid): The velocity grid.
        m (np.ndarray): Sampled global Maxwellian.
        blocks (Dict[str, np.ndarray]): Basis vectors per block, shape (k, nodes),
            with 5, 2 and 3 vectors for B0, B1 and B2.
        discarded (int): Number of discarded generators.
    """
    def __init__(self, grid: VelocityGrid):
        self.grid = grid
        v = grid.velocities
        speed2 = np.sum(v * v, axis=1)
        self.m = (2.0 * np.pi) ** -1.5 * np.exp(-0.5 * speed2)
        root = np.sqrt(self.m)
        generators = [
            ("B0", np.ones_like(speed2)),
            ("B0", v[:, 0]),
            ("B0", v[:, 1]),
            ("B0", v[:, 2]),
            ("B0", speed2),
            ("B1", 3.0 * v[:, 0] ** 2 - speed2),
            ("B1", 3.0 * v[:, 1] ** 2 - speed2),
            ("B1", 3.0 * v[:, 2] ** 2 - speed2),
            ("B2", v[:, 0] * v[:, 1]),
            ("B2", v[:, 0] * v[:, 2]),
            ("B2", v[:, 1] * v[:, 2])
        ]
        accepted = {block: [] for block in BLOCKS}
        ordered = []
        self.discarded = 0
        for block, generator in generators:
            vector = generator * root
            norm0 = self.norm(vector)
            for q in ordered:
                vector = vector - self.inner(q, vector) * q
            norm = self.norm(vector)
            if norm < 1e-8 * norm0:
                self.discarded += 1
                continue
            vector = vector / norm
            ordered.append(vector)
            accepted[block].append(vector)
        self.blocks = {block: np.array(vectors) for block, vectors in accepted.items()}


    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(self.grid.weight * np.dot(a, b))


    def norm(self, a: np.ndarray) -> float:
        return float(np.sqrt(self.inner(a, a)))


    def all_vectors(self) -> np.ndarray:
        """Every basis vector, blocks in order, shape (10, nodes)."""
        return np.concatenate([self.blocks[block] for block in BLOCKS])


    def gram(self) -> np.ndarray:
        vectors = self.all_vectors()
        return self.grid.weight * vectors @ vectors.T



def build_basis(grid: VelocityGrid) -> LinearizedBasis:
    """Build a fresh :class:`LinearizedBasis` without the cache."""
    return LinearizedBasis(grid)



def get_basis(grid: VelocityGrid, cache: bool = True) -> LinearizedBasis:
    """Return the linearized basis of ``grid``, reusing a cached one if available.

    Args:
        grid (VelocityGrid): The velocity grid.
        cache (bool): Whether to read and fill the module-level cache. Defaults to True.

    Returns:
        :class:`LinearizedBasis`: The basis.
    """
    key = (grid.n_per_axis, grid.v_max, tuple(grid.offset.tolist()))
    if cache and key in _BASIS_CACHE:
        return _BASIS_CACHE[key]
    basis = LinearizedBasis(grid)
    if cache:
        _BASIS_CACHE[key] = basis
    return basis



def project(
    basis: LinearizedBasis,
    block: Union[str, Iterable[str]],
    g: np.ndarray
) -> np.ndarray:
    """Orthogonal projection of ``g`` onto one block or a union of blocks.

    Args:
        basis (LinearizedBasis): The basis.
        block: 'B0', 'B1', 'B2' or an iterable of these names.
        g (np.ndarray): Grid function, shape (nodes,).

    Returns:
        np.ndarray: The projection, idempotent and self-adjoint in the discrete
            inner product.

    Raises:
        :class:`ValueError`: If a block name is unknown.
    """
    names = [block] if isinstance(block, str) else list(block)
    unknown = set(names) - set(BLOCKS)
    if unknown:
        raise ValueError(f"Invalid block: {sorted(unknown)}. Must be among {BLOCKS}")
    vectors = np.concatenate([basis.blocks[name] for name in names])
    coefficients = basis.grid.weight * (vectors @ g)
    return coefficients @ vectors



def apply_L(basis: LinearizedBasis, g: np.ndarray, nu: float) -> np.ndarray:
    """Linearized relaxation operator ``L_nu g = ((P0 g - g) + nu (P1 g + P2 g)) / (1 - nu)``.

    Every projection acts on ``g``. ``L_nu`` vanishes on B0, equals ``-Id`` on
    B1 and B2 and ``-Id / (1 - nu)`` on the rest.

    Raises:
        :class:`ValueError`: If nu is outside (-1/2, 1).
    """
    _validate_nu(nu)
    return ((project(basis, "B0", g) - g) + nu * project(basis, ("B1", "B2"), g)) / (1.0 - nu)



@dataclass(frozen=True)
class DirichletForm:
    """Both sides of the linearized entropy-dissipation identity.

    Attributes:
        lhs (float): ``-<L_nu g, g>``.
        rhs (float): ``(||(I - P0) g||^2 - nu ||(P1 + P2) g||^2) / (1 - nu)``.
        e_part (float): ``(1 - nu) ||L_nu g||^2``, nonnegative.
        remainder (float): ``nu ||(P1 + P2) g||^2``, with the sign of nu.
    """
    lhs: float
    rhs: float
    e_part: float
    remainder: float


    @property
    def mismatch(self) -> float:
        """``|lhs - rhs| / (1 + |lhs|)``."""
        return abs(self.lhs - self.rhs) / (1.0 + abs(self.lhs))


    @property
    def split_mismatch(self) -> float:
        """``|lhs - e_part - remainder| / (1 + |lhs|)``."""
        return abs(self.lhs - self.e_part - self.remainder) / (1.0 + abs(self.lhs))



def dirichlet_form(basis: LinearizedBasis, g: np.ndarray, nu: float) -> DirichletForm:
    """Evaluate ``-<L_nu g, g>`` and its closed-form decomposition.

    Besides the identity with the projection norms, reports the mirror of the
    nonlinear split, ``-<L_nu g, g> = (1 - nu) ||L_nu g||^2 + nu ||(P1 + P2) g||^2``,
    whose second term carries the sign of nu.

    Args:
        basis (LinearizedBasis): The basis.
        g (np.ndarray): Grid function.
        nu (float): Ellipsoidal parameter in (-1/2, 1).

    Returns:
        :class:`DirichletForm`: Both sides and the split.

    Examples:
        >>> basis = get_basis(build_grid(24, 8.0))
        >>> form = dirichlet_form(basis, basis.blocks["B0"][0], 0.5)
        >>> abs(form.lhs) < 1e-12
        True
    """
    Lg = apply_L(basis, g, nu)
    p12 = project(basis, ("B1", "B2"), g)
    orth = g - project(basis, "B0", g)
    p12_norm2 = basis.inner(p12, p12)
    return DirichletForm(
        lhs=-basis.inner(Lg, g),
        rhs=(basis.inner(orth, orth) - nu * p12_norm2) / (1.0 - nu),
        e_part=(1.0 - nu) * basis.inner(Lg, Lg),
        remainder=nu * p12_norm2
    )



def block_eigenvalues(basis: LinearizedBasis, nu: float) -> Dict[str, np.ndarray]:
    """Rayleigh quotients of ``L_nu`` on every basis vector and on a complement vector.

    The complement vector is ``v1^3 sqrt(m)`` with its components along all three
    blocks removed.

    Returns:
        Dict[str, np.ndarray]: Keys 'B0', 'B1', 'B2' (one quotient per basis vector)
            and 'complement' (a single quotient). Expected values are 0, -1, -1 and
            ``-1 / (1 - nu)``. The key 'residual' holds the largest
            ``||L phi - lambda phi||`` over the tested vectors.
    """
    v1 = basis.grid.velocities[:, 0]
    complement = v1 ** 3 * np.sqrt(basis.m)
    complement = complement - project(basis, BLOCKS, complement)
    complement = complement / basis.norm(complement)
    result: Dict[str, np.ndarray] = {}
    residual = 0.0
    for name, vectors in list(basis.blocks.items()) + [("complement", complement[None, :])]:
        quotients = []
        for phi in vectors:
            L_phi = apply_L(basis, phi, nu)
            quotient = basis.inner(L_phi, phi) / basis.inner(phi, phi)
            residual = max(residual, basis.norm(L_phi - quotient * phi))
            quotients.append(quotient)
        result[name] = np.array(quotients)
    result["residual"] = np.array([residual])
    return result
