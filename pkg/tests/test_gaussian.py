import pytest
import numpy as np
from esbgklab.grid_main import DistributionFunction, build_grid
from esbgklab.moment_main import MacroState, extract_moments
from esbgklab.moment_process import SymMat3
from esbgklab.gaussian_main import (
    temperature_tensor, ellipsoidal_gaussian, local_maxwellian, multivariate_gaussian,
    gaussian_from_covariance, evaluate_gaussian, gaussian_entropy_closed_form,
    entropy_gap_closed_form, gaussian_gap_bound, conservation_correct
)
from esbgklab.entropy_main import h_functional
from esbgklab.utils import KineticError, NU_GRID
from tests.test_fixtures import grid, wide_grid, maxwellian_state, anisotropic_state, maxwellian_f


def test_temperature_tensor_entries(anisotropic_state):
    """Test T_nu = (1-nu) T Id + nu Theta for a diagonal stress tensor."""
    tensor = temperature_tensor(anisotropic_state, 0.5)
    assert tensor.value.entries() == pytest.approx((1.5, 0.75, 0.75, 0.0, 0.0, 0.0))
    assert np.allclose(tensor.eigenvalues, [1.5, 0.75, 0.75])


def test_temperature_tensor_negative_nu(anisotropic_state):
    """Test the eigenvalues stay positive and reorder for negative nu."""
    tensor = temperature_tensor(anisotropic_state, -0.4)
    assert np.allclose(tensor.eigenvalues, [0.6, 1.2, 1.2])
    assert tensor.det() == pytest.approx(tensor.det_direct(), rel=1e-12)
    assert tensor.log_det() == pytest.approx(np.log(0.6 * 1.2 * 1.2))


@pytest.mark.parametrize("nu", [1.0, -0.5, 1.5, -1.0, np.nan])
def test_temperature_tensor_invalid_nu(anisotropic_state, nu):
    """Test nu outside (-1/2, 1) raises ValueError."""
    with pytest.raises(ValueError, match="nu must"):
        temperature_tensor(anisotropic_state, nu)


@pytest.mark.parametrize("nu", [1.0, -0.5])
def test_temperature_tensor_open_interval(anisotropic_state, nu):
    """Test both endpoints of the interval are rejected with the open-interval message."""
    with pytest.raises(ValueError, match=r"nu must lie in \(-1/2, 1\), got"):
        temperature_tensor(anisotropic_state, nu)


def test_temperature_tensor_inverse():
    """Test the inverse of T_nu for a rotated stress tensor."""
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    Theta = q @ np.diag([1.8, 0.9, 0.3]) @ q.T
    state = MacroState.from_fields(1.0, [0, 0, 0], 1.0, SymMat3.from_matrix(Theta))
    tensor = temperature_tensor(state, 0.75)
    assert np.allclose(tensor.inverse().to_matrix() @ tensor.value.to_matrix(), np.eye(3), atol=1e-12)


def test_local_maxwellian_and_multivariate(anisotropic_state):
    """Test the nu = 0 and nu = 1 special cases."""
    M0 = local_maxwellian(anisotropic_state)
    M1 = multivariate_gaussian(anisotropic_state)
    assert np.allclose(M0.Tnu.eigenvalues, 1.0)
    assert np.allclose(M1.Tnu.eigenvalues, [2.0, 0.5, 0.5])


def test_multivariate_gaussian_boundary():
    """Test the multivariate Gaussian is undefined for a degenerate stress tensor."""
    state = MacroState.from_fields(1.0, [0, 0, 0], 1.0, SymMat3.diagonal([3.0, 0.0, 0.0]))
    with pytest.raises(KineticError, match="Boundary state"):
        multivariate_gaussian(state)
    # the ellipsoidal Gaussian is still defined inside the interval
    assert ellipsoidal_gaussian(state, 0.9).Tnu.eigenvalues.min() == pytest.approx(0.1)


def test_log_density_matches_density(anisotropic_state):
    """Test log_density is the logarithm of density."""
    g = ellipsoidal_gaussian(anisotropic_state, 0.25)
    v = np.array([[0.0, 0.0, 0.0], [1.0, -2.0, 0.5], [3.0, 3.0, 3.0]])
    assert np.allclose(np.log(g.density(v)), g.log_density(v))
    assert g.density(v)[0] == pytest.approx(np.exp(g.log_norm))


@pytest.mark.parametrize("nu", NU_GRID)
def test_evaluate_gaussian_moments(wide_grid, anisotropic_state, nu):
    """Test the sampled M_nu has density, velocity, temperature and covariance T_nu."""
    g = ellipsoidal_gaussian(anisotropic_state, nu)
    f = evaluate_gaussian(g, wide_grid)
    assert f.source is g
    moments = extract_moments(f)
    assert moments.rho == pytest.approx(1.0, rel=1e-8)
    assert np.allclose(moments.U, 0.0, atol=1e-10)
    assert moments.T == pytest.approx(1.0, rel=1e-8)
    assert np.allclose(moments.Theta.to_matrix(), g.Tnu.value.to_matrix(), atol=1e-7)


def test_gaussian_entropy_closed_form_unit(maxwellian_state):
    """Test the entropy of the unit Maxwellian."""
    assert gaussian_entropy_closed_form(local_maxwellian(maxwellian_state)) == pytest.approx(-4.256815599, abs=1e-9)


@pytest.mark.parametrize("nu", [-0.4, 0.0, 0.5, 0.9])
def test_gaussian_entropy_matches_quadrature(wide_grid, anisotropic_state, nu):
    """Test the closed-form entropy matches sum w M ln M."""
    g = ellipsoidal_gaussian(anisotropic_state, nu)
    assert h_functional(evaluate_gaussian(g, wide_grid)) == pytest.approx(gaussian_entropy_closed_form(g), abs=1e-8)


@pytest.mark.parametrize("nu", NU_GRID)
def test_entropy_gap_bound(anisotropic_state, nu):
    """Test max{nu, -2nu}(H(M0) - H(M1)) <= H(M0) - H(M_nu) <= 0."""
    gap = entropy_gap_closed_form(anisotropic_state, nu)
    bound = gaussian_gap_bound(anisotropic_state, nu)
    assert gap <= 1e-15
    assert gap >= bound - 1e-12


def test_entropy_gap_at_zero_and_isotropy(anisotropic_state, maxwellian_state):
    """Test the gap vanishes at nu = 0 and for isotropic states."""
    assert entropy_gap_closed_form(anisotropic_state, 0.0) == 0.0
    assert entropy_gap_closed_form(maxwellian_state, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert gaussian_gap_bound(anisotropic_state, 0.5) == pytest.approx(0.5 * 0.5 * np.log(2.0 * 0.25))


def test_entropy_gap_matches_entropies(anisotropic_state):
    """Test the gap equals the difference of the closed-form entropies."""
    nu = 0.75
    H0 = gaussian_entropy_closed_form(local_maxwellian(anisotropic_state))
    Hnu = gaussian_entropy_closed_form(ellipsoidal_gaussian(anisotropic_state, nu))
    assert entropy_gap_closed_form(anisotropic_state, nu) == pytest.approx(H0 - Hnu, abs=1e-14)


def test_gaussian_from_covariance():
    """Test an arbitrary covariance becomes a nu = 1 Gaussian with that covariance."""
    covariance = np.array([[1.0, 0.3, 0.0], [0.3, 0.8, 0.1], [0.0, 0.1, 0.6]])
    g = gaussian_from_covariance(0.4, [0.2, 0.0, -0.1], covariance)
    assert g.rho == 0.4
    assert g.Tnu.nu == 1.0
    assert np.allclose(g.Tnu.value.to_matrix(), covariance)


def test_conservation_correct_restores_moments(maxwellian_state):
    """Test the correction restores the moments lost on a coarse, truncated grid."""
    coarse = build_grid(16, 4.0)
    f_M = evaluate_gaussian(local_maxwellian(maxwellian_state), coarse)
    assert abs(f_M.mass() - 1.0) > 1e-6
    corrected = conservation_correct(f_M, maxwellian_state)
    moments = extract_moments(corrected)
    assert moments.rho == pytest.approx(1.0, rel=1e-11)
    assert np.allclose(moments.U, 0.0, atol=1e-11)
    assert moments.T == pytest.approx(1.0, rel=1e-11)


def test_conservation_correct_noop(maxwellian_f):
    """Test a Gaussian matching its target exactly is returned unchanged."""
    target = extract_moments(maxwellian_f)
    assert conservation_correct(maxwellian_f, target) is maxwellian_f


def test_conservation_correct_needs_gaussian(grid, maxwellian_state):
    """Test the correction rejects values without a Gaussian source."""
    f = DistributionFunction(grid, np.ones(grid.size))
    with pytest.raises(KineticError, match="needs a sampled Gaussian"):
        conservation_correct(f, maxwellian_state)
