import pytest
import numpy as np
from esbgklab.grid_main import DistributionFunction, build_grid
from esbgklab.moment_main import MacroState
from esbgklab.gaussian_main import local_maxwellian, evaluate_gaussian, gaussian_entropy_closed_form
from esbgklab.entropy_main import (
    h_functional, relative_entropy, kullback_margin, f_nu_scalar, entropy_production, diperna_lions_check
)
from esbgklab.entropy_option import EntropyOption
from esbgklab.utils import KineticError, NU_GRID
from tests.test_fixtures import (
    grid, wide_grid, maxwellian_state, anisotropic_state, maxwellian_f, anisotropic_f
)


def _drifting(grid, U, T=1.0, rho=1.0):
    return evaluate_gaussian(local_maxwellian(MacroState.from_fields(rho, U, T)), grid)


def test_h_functional_zero_log_zero():
    """Test H uses 0 ln 0 = 0 and vanishes on the unit function."""
    g = build_grid(2, 1.0)
    assert h_functional(DistributionFunction(g, np.ones(8))) == 0.0
    assert h_functional(DistributionFunction(g, [0, 0, 0, 0, 1, 1, 1, 1])) == 0.0


def test_h_functional_maxwellian(maxwellian_f, maxwellian_state):
    """Test H of the sampled Maxwellian matches its closed form."""
    closed = gaussian_entropy_closed_form(local_maxwellian(maxwellian_state))
    assert h_functional(maxwellian_f) == pytest.approx(closed, abs=1e-9)


def test_relative_entropy_self_and_positive(grid, maxwellian_f):
    """Test H(f | f) = 0 and H(f | g) > 0 for a shifted Maxwellian of equal mass."""
    assert relative_entropy(maxwellian_f, maxwellian_f) == 0.0
    shifted = _drifting(grid, [0.5, 0.0, 0.0])
    # continuum value |U|^2 / 2
    assert relative_entropy(shifted, maxwellian_f) == pytest.approx(0.125, rel=1e-8)


def test_relative_entropy_support_violation():
    """Test f > 0 where g = 0 raises KineticError."""
    g_grid = build_grid(2, 1.0)
    f = DistributionFunction(g_grid, np.ones(8))
    g = DistributionFunction(g_grid, [0, 1, 1, 1, 1, 1, 1, 1])
    with pytest.raises(KineticError, match="Support violation at 1 nodes"):
        relative_entropy(f, g)


def test_relative_entropy_grid_mismatch(maxwellian_f):
    """Test relative entropy rejects distributions on different grids."""
    other = DistributionFunction(build_grid(24, 7.0), maxwellian_f.values)
    with pytest.raises(KineticError, match="Grid mismatch"):
        relative_entropy(maxwellian_f, other)


@pytest.mark.parametrize("shift", [0.1, 0.5, 1.5])
def test_kullback_margin(grid, maxwellian_f, shift):
    """Test ||f - g||_1 <= sqrt(2 rho H(f | g)) for shifted Maxwellians."""
    assert kullback_margin(_drifting(grid, [shift, 0.0, 0.0]), maxwellian_f) >= 0.0
    heavy = _drifting(grid, [shift, 0.0, 0.0], rho=2.0)
    assert kullback_margin(heavy, maxwellian_f.scaled(2.0)) >= 0.0


def test_kullback_margin_unequal_mass(maxwellian_f):
    """Test the Kullback inequality needs equal masses."""
    with pytest.raises(ValueError, match="equal masses"):
        kullback_margin(maxwellian_f.scaled(1.5), maxwellian_f)


def test_f_nu_scalar_values():
    """Test the stress ratio on a fixed state and its nu = 0 value."""
    assert round(f_nu_scalar(1.0, [1.5, 1.0, 0.5], 0.9), 4) == 2.9436
    assert f_nu_scalar(1.0, [1.5, 1.0, 0.5], 0.0) == pytest.approx(3.0, abs=1e-15)
    assert f_nu_scalar(1.0, [1.5, 1.0, 0.5], -0.4) == pytest.approx(1.5 / 0.8 + 1.0 + 0.5 / 1.2)


@pytest.mark.parametrize("nu", NU_GRID)
def test_f_nu_scalar_bounds(nu):
    """Test F_nu <= 3 for nu >= 0 and 3 <= F_nu <= 3 / (1 + 2nu) for nu <= 0 on random states."""
    rng = np.random.default_rng(0)
    T = rng.uniform(0.1, 10.0, size=500)
    theta = 3.0 * T[:, None] * rng.dirichlet(np.ones(3), size=500)
    F = f_nu_scalar(T, theta, nu)
    assert F.shape == (500,)
    if nu >= 0:
        assert np.all(F <= 3.0 + 1e-12)
    if nu <= 0:
        assert np.all(F >= 3.0 - 1e-12)
        assert np.all(F <= 3.0 / (1.0 + 2.0 * nu) + 1e-12)


def test_f_nu_scalar_errors():
    """Test the stress ratio rejects bad traces, boundary states, T and nu."""
    with pytest.raises(KineticError, match="trace constraint"):
        f_nu_scalar(1.0, [1.0, 1.0, 1.5], 0.5)
    with pytest.raises(KineticError, match="Boundary state"):
        f_nu_scalar(1.0, [3.0, 0.0, 0.0], 0.5)
    with pytest.raises(ValueError, match="T must be positive"):
        f_nu_scalar(0.0, [0.0, 0.0, 0.0], 0.5)
    with pytest.raises(ValueError, match="nu must"):
        f_nu_scalar(1.0, [1.0, 1.0, 1.0], 1.0)


@pytest.mark.parametrize("nu", [-0.4, 0.0, 0.5, 0.95])
def test_entropy_production_at_equilibrium(maxwellian_f, nu):
    """Test the production and the relative entropy vanish on a Maxwellian."""
    report = entropy_production(maxwellian_f, nu, 3.0 / (1.0 - nu))
    assert abs(report.D_nu) <= 1e-8
    assert abs(report.rel_entropy) <= 1e-10
    assert report.l1_to_maxwellian <= 1e-8
    assert report.F_nu == pytest.approx(3.0, abs=1e-10)


@pytest.mark.parametrize("nu", NU_GRID)
def test_entropy_production_margins(anisotropic_f, nu):
    """Test every inequality margin holds on the anisotropic Gaussian."""
    A_nu = 3.0 / (1.0 - nu)
    report = entropy_production(anisotropic_f, nu, A_nu)
    allowance = 1e-6 * (1.0 + abs(report.D_nu))
    assert report.margins["production_bound"] >= -allowance
    assert report.margins["convexity"] >= -allowance
    assert report.margins["gaussian_gap"] >= -1e-12
    assert report.margins["maxwellian_below_gaussian"] >= -1e-12
    assert report.margins["gaussian_below_f"] >= -1e-6
    assert report.margins["stress_ratio"] >= -1e-12
    assert report.margins["remainder_sign"] >= -1e-10 * A_nu
    assert report.margins["remainder_floor"] >= -1e-12 * A_nu
    assert report.margins["relative_entropy"] >= -1e-10
    assert report.errors["remainder_consistency"] <= 1e-6
    assert report.errors["split_consistency"] <= 1e-8
    assert report.E_part >= 0.0
    assert report.D_reconstructed == pytest.approx(report.D_nu, rel=1e-8)


def test_entropy_production_values(anisotropic_f):
    """Test the functionals of the anisotropic Gaussian against closed forms."""
    report = entropy_production(anisotropic_f, 0.0, 3.0)
    gap = 0.5 * np.log(2.0 * 0.25)
    assert report.rel_entropy == pytest.approx(-gap, rel=1e-6)
    assert report.H_M1 - report.H_M0 == pytest.approx(-gap, rel=1e-6)
    assert report.R_nu_closed == pytest.approx(0.0, abs=1e-12)
    assert report.rho == pytest.approx(1.0, rel=1e-8)
    assert set(report.to_dict()) >= {"D_nu", "margins", "errors", "F_nu"}


def test_entropy_production_zero_rate(anisotropic_f):
    """Test A_nu = 0 gives zero production and rejects negative rates."""
    report = entropy_production(anisotropic_f, 0.5, 0.0)
    assert report.D_nu == 0.0
    with pytest.raises(ValueError, match="A_nu"):
        entropy_production(anisotropic_f, 0.5, -1.0)


def test_entropy_production_log_floor(grid, maxwellian_f):
    """Test zero nodes need the log floor."""
    values = maxwellian_f.values.copy()
    values[0] = 0.0
    f = DistributionFunction(grid, values)
    with pytest.raises(KineticError, match="enable log_floor"):
        entropy_production(f, 0.5, 1.0)
    report = entropy_production(f, 0.5, 1.0, EntropyOption(log_floor=True))
    assert np.isfinite(report.D_nu)


def test_entropy_production_boundary_state():
    """Test margins that need the multivariate Gaussian are None for a one-dimensional state."""
    g = build_grid(8, 4.0)
    values = np.zeros(g.size)
    for k1 in range(8):
        values[g.node_index(k1, 3, 3)] = np.exp(-0.5 * g.axis[k1] ** 2)
    report = entropy_production(DistributionFunction(g, values), 0.5, 1.0, EntropyOption(log_floor=True))
    assert report.H_M1 is None
    assert report.margins["gaussian_gap"] is None


@pytest.mark.parametrize("R_trunc", [1.1, np.e, 10.0])
@pytest.mark.parametrize("nu", [-0.4, 0.5, 0.9])
def test_diperna_lions_check(anisotropic_f, nu, R_trunc):
    """Test the pointwise truncation split and its integrated form."""
    report = diperna_lions_check(anisotropic_f, nu, R_trunc)
    assert report.max_violation <= 1e-12
    assert report.violating_nodes == 0
    assert report.split_slack >= -1e-12
    assert report.integrated_slack >= -1e-12
    assert report.gaussian_mass == pytest.approx(1.0, rel=1e-8)


@pytest.mark.parametrize("R_trunc", [1.0, 0.5, np.inf])
def test_diperna_lions_check_invalid_level(anisotropic_f, R_trunc):
    """Test truncation levels must be finite and larger than 1."""
    with pytest.raises(ValueError, match="R_trunc"):
        diperna_lions_check(anisotropic_f, 0.5, R_trunc)


def test_diperna_lions_check_entropy_term_grows_near_one(anisotropic_f):
    """Test the 1/ln R entropy term grows as the truncation level falls towards 1."""
    terms = [diperna_lions_check(anisotropic_f, 0.5, R_trunc).entropy_term for R_trunc in (10.0, 2.0, 1.1)]
    assert terms[0] > 0.0
    assert terms[0] < terms[1] < terms[2]
