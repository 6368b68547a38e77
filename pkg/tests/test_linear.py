import pytest
import numpy as np
from esbgklab.grid_main import build_grid
from esbgklab.linear_main import (
    BLOCKS, get_basis, build_basis, project, apply_L, dirichlet_form, block_eigenvalues
)


@pytest.fixture(scope="module")
def basis():
    """Provide the linearized basis on a 16-point grid on [-6, 6]^3."""
    return get_basis(build_grid(16, 6.0))


def _random_functions(basis, count, seed=0):
    rng = np.random.default_rng(seed)
    return [rng.standard_normal(basis.grid.size) for _ in range(count)]


def test_basis_is_orthonormal(basis):
    """Test the Gram matrix of the ten basis vectors is the identity."""
    assert basis.all_vectors().shape == (10, basis.grid.size)
    assert np.allclose(basis.gram(), np.eye(10), atol=1e-12)


def test_block_sizes(basis):
    """Test B0, B1 and B2 keep 5, 2 and 3 vectors and one generator is discarded."""
    assert [len(basis.blocks[name]) for name in BLOCKS] == [5, 2, 3]
    assert basis.discarded == 1


def test_get_basis_cache():
    """Test the cache returns one basis per grid unless disabled."""
    grid = build_grid(8, 5.0)
    first = get_basis(grid)
    assert get_basis(build_grid(8, 5.0)) is first
    assert get_basis(grid, cache=False) is not first
    assert build_basis(grid) is not first


def test_project_idempotent_and_self_adjoint(basis):
    """Test every projection is idempotent and self-adjoint in the discrete inner product."""
    a, b = _random_functions(basis, 2)
    for block in ["B0", "B1", "B2", ("B1", "B2"), BLOCKS]:
        Pa = project(basis, block, a)
        assert np.allclose(project(basis, block, Pa), Pa, atol=1e-10)
        assert basis.inner(Pa, b) == pytest.approx(basis.inner(a, project(basis, block, b)), rel=1e-10)


def test_project_unknown_block(basis):
    """Test unknown block names raise ValueError."""
    with pytest.raises(ValueError, match="Invalid block"):
        project(basis, "B3", np.zeros(basis.grid.size))


@pytest.mark.parametrize("nu", [-0.4, 0.0, 0.5, 0.9])
def test_block_eigenvalues(basis, nu):
    """Test L_nu is 0 on B0, -1 on B1 and B2 and -1/(1-nu) on the complement."""
    values = block_eigenvalues(basis, nu)
    assert np.allclose(values["B0"], 0.0, atol=1e-12)
    assert np.allclose(values["B1"], -1.0, atol=1e-12)
    assert np.allclose(values["B2"], -1.0, atol=1e-12)
    assert values["complement"][0] == pytest.approx(-1.0 / (1.0 - nu), rel=1e-12)
    assert values["residual"][0] <= 1e-10


@pytest.mark.parametrize("nu", [-0.45, -0.25, 0.0, 0.25, 0.75, 0.95])
def test_dirichlet_form_identity(basis, nu):
    """Test -<L g, g> matches the projection norms and the entropy-production split."""
    for g in _random_functions(basis, 5, seed=3):
        form = dirichlet_form(basis, g, nu)
        assert form.mismatch <= 1e-8
        assert form.split_mismatch <= 1e-8
        assert form.lhs >= 0.0
        assert form.e_part >= 0.0
        assert np.sign(form.remainder) == np.sign(nu)


def test_dirichlet_form_on_equilibrium(basis):
    """Test the form vanishes on B0 and equals the norm on B2."""
    assert abs(dirichlet_form(basis, basis.blocks["B0"][4], 0.5).lhs) < 1e-12
    form = dirichlet_form(basis, basis.blocks["B2"][0], 0.5)
    assert form.lhs == pytest.approx(1.0, rel=1e-12)
    assert form.remainder == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize("nu", [1.0, -0.5])
def test_apply_L_invalid_nu(basis, nu):
    """Test L_nu is only defined for nu in (-1/2, 1)."""
    with pytest.raises(ValueError, match="nu must"):
        apply_L(basis, np.zeros(basis.grid.size), nu)
