import pytest
import numpy as np
from esbgklab.grid_main import build_grid
from esbgklab.moment_main import MacroState
from esbgklab.gaussian_main import local_maxwellian, ellipsoidal_gaussian, evaluate_gaussian
from esbgklab.solver_option import SolverConfig
from esbgklab.solver_main import run_homogeneous, run_slab_1d
from esbgklab.solver_process import _upwind_transport
from tests.test_fixtures import anisotropic_state, maxwellian_state


@pytest.fixture(scope="module")
def slab_grid():
    """Provide a 16-point grid on [-8, 8]^3, so max |v1| = 7.5."""
    return build_grid(16, 8.0)


def _sinusoidal_cells(grid, nx, L, amplitude):
    f_M = evaluate_gaussian(local_maxwellian(MacroState.from_fields(1.0, [0.0, 0.0, 0.0], 1.0)), grid)
    centers = (np.arange(nx) + 0.5) * L / nx
    return [f_M.scaled(1.0 + amplitude * np.sin(2.0 * np.pi * x / L)) for x in centers]


def test_uniform_slab_matches_relaxation(slab_grid, anisotropic_state):
    """Test spatially uniform data evolves exactly like the homogeneous run in every cell."""
    f0 = evaluate_gaussian(ellipsoidal_gaussian(anisotropic_state, 0.5), slab_grid)
    cfg = SolverConfig(nu=0.0, dt=0.1, t_end=0.5)
    slab = run_slab_1d(f0, cfg, nx=4, L=4.0)
    relax = run_homogeneous(f0, cfg)
    assert slab.final_values.shape == (4, slab_grid.size)
    for cell in slab.final_values:
        assert np.max(np.abs(cell - relax.final_values)) <= 1e-12


def test_sinusoidal_slab_invariants():
    """Test a density wave keeps the slab totals, a nonincreasing global entropy and D >= 0."""
    grid = build_grid(24, 8.0)
    cells = _sinusoidal_cells(grid, nx=8, L=8.0, amplitude=0.2)
    trajectory = run_slab_1d(cells, SolverConfig(nu=0.5, dt=0.05, t_end=0.5), nx=8, L=8.0)
    summary = trajectory.summary()
    frame = trajectory.to_frame()
    assert summary["kind"] == "slab"
    assert summary["snapshots"] == 11
    assert summary["mass_drift"] <= 1e-7
    assert summary["momentum_drift"] <= 1e-7
    assert summary["energy_drift"] <= 1e-6
    assert summary["max_entropy_increase"] <= 1e-10
    assert np.all(frame["D_global"] >= -1e-6)
    assert frame["mass"].iloc[0] == pytest.approx(8.0, rel=1e-7)


def test_slab_store_distributions():
    """Test stored slab snapshots hold every cell."""
    grid = build_grid(8, 6.0)
    cells = _sinusoidal_cells(grid, nx=4, L=8.0, amplitude=0.1)
    cfg = SolverConfig(dt=0.1, t_end=0.2, store_distributions=True)
    trajectory = run_slab_1d(cells, cfg, nx=4, L=8.0)
    assert len(trajectory.distributions) == 3
    assert trajectory.distributions[0].shape == (4, grid.size)


@pytest.mark.parametrize("velocity, shift", [(1.0, 1), (-1.0, -1)])
def test_upwind_transport_unit_courant(velocity, shift):
    """Test a Courant number of one moves every column by one cell."""
    F = np.arange(12, dtype=float).reshape(6, 2)
    moved = _upwind_transport(F, np.array([velocity, velocity]), dt=0.5, dx=0.5)
    assert np.array_equal(moved, np.roll(F, shift, axis=0))


def test_upwind_transport_conserves_columns():
    """Test periodic upwind transport keeps every column sum."""
    rng = np.random.default_rng(1)
    F = rng.uniform(size=(10, 5))
    moved = _upwind_transport(F, np.array([-2.0, -0.5, 0.0, 0.5, 2.0]), dt=0.1, dx=0.25)
    assert np.allclose(moved.sum(axis=0), F.sum(axis=0), rtol=1e-14)
    assert np.array_equal(moved[:, 2], F[:, 2])


def test_slab_cfl_gate(slab_grid, maxwellian_state):
    """Test a CFL number above 0.9 is rejected."""
    f0 = evaluate_gaussian(local_maxwellian(maxwellian_state), slab_grid)
    with pytest.raises(ValueError, match="CFL condition violated"):
        run_slab_1d(f0, SolverConfig(dt=0.15), nx=4, L=4.0)


def test_slab_invalid_cells(slab_grid, maxwellian_state):
    """Test the slab rejects a wrong cell count, mixed grids and bad sizes."""
    f0 = evaluate_gaussian(local_maxwellian(maxwellian_state), slab_grid)
    cfg = SolverConfig(dt=0.05)
    with pytest.raises(ValueError, match="Expected 4 cell distributions"):
        run_slab_1d([f0, f0, f0], cfg, nx=4, L=4.0)
    other = evaluate_gaussian(local_maxwellian(maxwellian_state), build_grid(16, 7.0))
    with pytest.raises(ValueError, match="share one velocity grid"):
        run_slab_1d([f0, other], cfg, nx=2, L=4.0)
    with pytest.raises(ValueError, match="nx must"):
        run_slab_1d(f0, cfg, nx=0, L=4.0)
    with pytest.raises(ValueError, match="L must"):
        run_slab_1d(f0, cfg, nx=4, L=0.0)
