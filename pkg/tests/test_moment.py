import pytest
import numpy as np
from esbgklab.grid_main import DistributionFunction, build_grid
from esbgklab.moment_main import MacroState, extract_moments
from esbgklab.moment_process import SymMat3, eigendecompose, det3, inverse3
from esbgklab.gaussian_main import local_maxwellian, multivariate_gaussian, evaluate_gaussian
from esbgklab.utils import KineticError
from tests.test_fixtures import (
    grid, wide_grid, maxwellian_state, anisotropic_state, maxwellian_f, anisotropic_f
)


def _random_spd(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((3, 3))
    return a @ a.T + 0.1 * np.eye(3)


def test_symmat3_roundtrip_and_trace():
    """Test SymMat3 stores six entries and rebuilds the full matrix."""
    m = SymMat3(1.0, 2.0, 3.0, 0.1, 0.2, 0.3)
    assert m.trace() == 6.0
    assert np.array_equal(m.to_matrix(), m.to_matrix().T)
    assert SymMat3.from_matrix(m.to_matrix()) == m
    assert m.entries() == (1.0, 2.0, 3.0, 0.1, 0.2, 0.3)


def test_symmat3_arithmetic():
    """Test SymMat3 addition, subtraction and scaling."""
    a = SymMat3.diagonal([2.0, 0.5, 0.5])
    b = SymMat3.identity(1.0)
    assert (a - b).entries() == (1.0, -0.5, -0.5, 0.0, 0.0, 0.0)
    assert (a + b).trace() == 6.0
    assert a.scaled(2.0) == SymMat3.diagonal([4.0, 1.0, 1.0])


def test_symmat3_from_matrix_rejects_shape():
    """Test SymMat3.from_matrix rejects non-3x3 input."""
    with pytest.raises(ValueError, match="3x3"):
        SymMat3.from_matrix(np.eye(2))


@pytest.mark.parametrize("seed", range(5))
def test_eigendecompose_reconstructs(seed):
    """Test the Jacobi eigen-solver reconstructs random symmetric positive matrices."""
    matrix = _random_spd(seed)
    P, lam = eigendecompose(SymMat3.from_matrix(matrix))
    assert np.allclose(P @ np.diag(lam) @ P.T, matrix, atol=1e-12 * np.abs(matrix).max())
    assert np.allclose(P.T @ P, np.eye(3), atol=1e-13)
    assert np.all(np.diff(lam) <= 0)
    assert np.allclose(lam, np.sort(np.linalg.eigvalsh(matrix))[::-1], rtol=1e-12)


def test_eigendecompose_sign_convention():
    """Test every eigenvector has a positive first nonzero component."""
    P, _ = eigendecompose(SymMat3.from_matrix(_random_spd(7)))
    for k in range(3):
        first = P[np.flatnonzero(np.abs(P[:, k]) > 1e-14)[0], k]
        assert first > 0


def test_eigendecompose_diagonal_and_degenerate():
    """Test diagonal and isotropic matrices keep the identity eigenbasis."""
    P, lam = eigendecompose(SymMat3.diagonal([2.0, 0.5, 0.5]))
    assert np.array_equal(lam, [2.0, 0.5, 0.5])
    assert np.array_equal(P, np.eye(3))
    P, lam = eigendecompose(SymMat3.identity(1.0))
    assert np.array_equal(lam, [1.0, 1.0, 1.0])
    assert np.array_equal(P, np.eye(3))


def test_eigendecompose_deterministic():
    """Test identical inputs give bit-identical outputs."""
    m = SymMat3.from_matrix(_random_spd(3))
    P1, lam1 = eigendecompose(m)
    P2, lam2 = eigendecompose(m)
    assert np.array_equal(P1, P2)
    assert np.array_equal(lam1, lam2)


def test_det3_and_inverse3():
    """Test determinant and inverse of a diagonal matrix."""
    m = SymMat3.diagonal([2.0, 4.0, 8.0])
    assert det3(m) == pytest.approx(64.0)
    inv = inverse3(m)
    assert np.allclose(inv.to_matrix(), np.diag([0.5, 0.25, 0.125]))


def test_inverse3_random():
    """Test inverse3 inverts a random positive definite matrix."""
    matrix = _random_spd(11)
    inv = inverse3(SymMat3.from_matrix(matrix)).to_matrix()
    assert np.allclose(inv @ matrix, np.eye(3), atol=1e-10)


def test_inverse3_singular():
    """Test inverse3 rejects a singular matrix with its minimum eigenvalue."""
    with pytest.raises(KineticError, match="singular or indefinite") as excinfo:
        inverse3(SymMat3.diagonal([1.0, 1.0, 0.0]))
    assert excinfo.value.quantity == "min eigenvalue"


def test_macro_state_from_fields():
    """Test from_fields defaults Theta to T Id and validates the fields."""
    state = MacroState.from_fields(2.0, [1.0, 0.0, 0.0], 1.5)
    assert state.Theta == SymMat3.identity(1.5)
    with pytest.raises(ValueError, match="positive"):
        MacroState.from_fields(-1.0, [0, 0, 0], 1.0)
    with pytest.raises(ValueError, match="trace"):
        MacroState.from_fields(1.0, [0, 0, 0], 1.0, SymMat3.diagonal([2.0, 2.0, 2.0]))


def test_extract_moments_maxwellian(grid):
    """Test moments of a drifting Maxwellian match its parameters."""
    state = MacroState.from_fields(1.3, [0.5, -0.25, 0.0], 1.2)
    f = evaluate_gaussian(local_maxwellian(state), grid)
    moments = extract_moments(f)
    assert moments.rho == pytest.approx(1.3, rel=1e-9)
    assert np.allclose(moments.U, [0.5, -0.25, 0.0], atol=1e-9)
    assert moments.T == pytest.approx(1.2, rel=1e-8)


def test_extract_moments_anisotropic(anisotropic_f):
    """Test the stress tensor of the anisotropic Gaussian is recovered."""
    moments = extract_moments(anisotropic_f)
    assert np.allclose(moments.Theta.to_matrix(), np.diag([2.0, 0.5, 0.5]), atol=1e-8)
    assert moments.T == pytest.approx(1.0, rel=1e-8)


def test_extract_moments_trace_identity(anisotropic_f):
    """Test trace(Theta) = 3T holds to rounding."""
    moments = extract_moments(anisotropic_f)
    assert moments.Theta.trace() == pytest.approx(3.0 * moments.T, rel=1e-14)


def test_extract_moments_zero_mass():
    """Test a zero distribution has no realizable moments."""
    g = build_grid(4, 2.0)
    with pytest.raises(KineticError, match="no mass") as excinfo:
        extract_moments(DistributionFunction(g, np.zeros(64)))
    assert excinfo.value.quantity == "rho"


def test_extract_moments_single_node():
    """Test a single-node concentration has zero temperature."""
    g = build_grid(4, 2.0)
    values = np.zeros(64)
    values[g.node_index(1, 2, 3)] = 1.0
    with pytest.raises(KineticError, match="Non-positive temperature"):
        extract_moments(DistributionFunction(g, values))


def test_extract_moments_galilean_shift(wide_grid, anisotropic_f):
    """Test moving the grid by a node-commensurate velocity shifts U and keeps rho, T and Theta."""
    base = extract_moments(anisotropic_f)
    shift = np.array([wide_grid.h, -2.0 * wide_grid.h, 0.0])
    moved = extract_moments(anisotropic_f.on_grid(wide_grid.shifted(shift)))
    assert moved.rho == pytest.approx(base.rho, rel=1e-14)
    assert np.allclose(moved.U, base.U + shift, atol=1e-12)
    assert moved.T == pytest.approx(base.T, rel=1e-12)
    assert np.allclose(moved.Theta.to_matrix(), base.Theta.to_matrix(), atol=1e-12)


def test_extract_moments_mass_scaling(anisotropic_f):
    """Test scaling f by c scales rho by c and leaves U, T and Theta unchanged."""
    base = extract_moments(anisotropic_f)
    scaled = extract_moments(anisotropic_f.scaled(3.5))
    assert scaled.rho == pytest.approx(3.5 * base.rho, rel=1e-14)
    assert np.allclose(scaled.U, base.U, atol=1e-14)
    assert scaled.T == pytest.approx(base.T, rel=1e-13)
    assert np.allclose(scaled.Theta.to_matrix(), base.Theta.to_matrix(), atol=1e-13)


def test_extract_moments_two_stream(wide_grid):
    """Test two equal Maxwellians drifting at +u and -u give T = T0 + u^2 / 3."""
    u, T0 = 1.5, 1.0
    streams = [
        evaluate_gaussian(local_maxwellian(MacroState.from_fields(0.5, [sign * u, 0.0, 0.0], T0)), wide_grid)
        for sign in (1.0, -1.0)
    ]
    f = DistributionFunction(wide_grid, streams[0].values + streams[1].values)
    moments = extract_moments(f)
    assert moments.rho == pytest.approx(1.0, rel=1e-10)
    assert np.allclose(moments.U, 0.0, atol=1e-12)
    assert moments.T == pytest.approx(T0 + u ** 2 / 3.0, rel=1e-9)
    assert np.allclose(moments.Theta.to_matrix(), np.diag([T0 + u ** 2, T0, T0]), atol=1e-8)
