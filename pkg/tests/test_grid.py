import pytest
import numpy as np
from esbgklab.grid_main import (
    DistributionFunction, build_grid, quadrature, sample_distribution, fit_velocity_domain
)
from esbgklab.utils import KineticError
from tests.test_fixtures import grid, maxwellian_state, maxwellian_f


def test_build_grid_spacing_and_weight():
    """Test build_grid computes the spacing and the midpoint weight."""
    g = build_grid(n_per_axis=64, v_max=8.0)
    assert g.h == 0.25
    assert g.weight == 0.015625
    assert g.size == 64 ** 3
    assert g.velocities.shape == (64 ** 3, 3)


def test_build_grid_midpoints():
    """Test build_grid places nodes at cell midpoints, symmetric about the center."""
    g = build_grid(4, 2.0)
    assert np.allclose(g.axis, [-1.5, -0.5, 0.5, 1.5])
    assert np.allclose(g.velocities.sum(axis=0), 0.0)


@pytest.mark.parametrize("n_per_axis, v_max", [(1, 8.0), (2.5, 8.0), (True, 8.0), (8, 0.0), (8, -1.0), (8, np.inf)])
def test_build_grid_invalid(n_per_axis, v_max):
    """Test build_grid rejects invalid sizes with ValueError."""
    with pytest.raises(ValueError):
        build_grid(n_per_axis, v_max)


def test_node_index_lexicographic():
    """Test nodes are stored in lexicographic (k1, k2, k3) order."""
    g = build_grid(4, 2.0)
    assert g.node_index(0, 0, 1) == 1
    assert g.node_index(0, 1, 0) == 4
    assert g.node_index(1, 0, 0) == 16
    assert np.allclose(g.node_velocity(1, 2, 3), [-0.5, 0.5, 1.5])


def test_grid_is_immutable():
    """Test node velocities cannot be modified in place."""
    g = build_grid(4, 2.0)
    with pytest.raises(ValueError):
        g.velocities[0, 0] = 1.0


def test_shifted_grid():
    """Test shifted moves the center and keeps the node count."""
    g = build_grid(4, 2.0)
    moved = g.shifted([1.0, 0.0, 0.0])
    assert moved.size == g.size
    assert np.allclose(moved.velocities - g.velocities, [1.0, 0.0, 0.0])
    assert not moved.same_as(g)
    assert build_grid(4, 2.0).same_as(g)


def test_quadrature_of_ones():
    """Test the midpoint rule integrates the unit function on a unit-spacing grid."""
    g = build_grid(2, 1.0)
    assert quadrature(DistributionFunction(g, np.ones(8))) == 8.0


def test_quadrature_vector_test_function(maxwellian_f):
    """Test quadrature with a callable returning node velocities gives the momentum."""
    momentum = quadrature(maxwellian_f, lambda v: v)
    assert momentum.shape == (3,)
    assert np.allclose(momentum, 0.0, atol=1e-12)


def test_quadrature_maxwellian_mass(maxwellian_f):
    """Test the sampled unit Maxwellian has unit mass to spectral accuracy."""
    assert maxwellian_f.mass() == pytest.approx(1.0, abs=1e-10)


def test_quadrature_wrong_length(maxwellian_f):
    """Test quadrature rejects a test function with the wrong node count."""
    with pytest.raises(KineticError, match="Test function has 3 nodes"):
        quadrature(maxwellian_f, np.ones(3))


def test_quadrature_grid_mismatch(maxwellian_f):
    """Test quadrature rejects a distribution on another grid as test function."""
    other = DistributionFunction(build_grid(24, 7.0), np.ones(24 ** 3))
    with pytest.raises(KineticError, match="Grid mismatch"):
        quadrature(maxwellian_f, other)


def test_distribution_rejects_negative():
    """Test DistributionFunction rejects negative values with the offending minimum."""
    g = build_grid(2, 1.0)
    with pytest.raises(KineticError, match="negative values") as excinfo:
        DistributionFunction(g, [1, 1, 1, 1, 1, 1, 1, -0.5])
    assert excinfo.value.value == -0.5
    assert excinfo.value.function == "DistributionFunction"


def test_distribution_rejects_wrong_size_and_nan():
    """Test DistributionFunction rejects wrong sizes and non-finite values."""
    g = build_grid(2, 1.0)
    with pytest.raises(KineticError, match="has 7 values"):
        DistributionFunction(g, np.ones(7))
    with pytest.raises(KineticError, match="non-finite"):
        DistributionFunction(g, [1, 1, 1, 1, 1, 1, 1, np.nan])


def test_distribution_values_are_frozen():
    """Test distribution values are copied and read-only."""
    g = build_grid(2, 1.0)
    raw = np.ones(8)
    f = DistributionFunction(g, raw)
    raw[0] = 5.0
    assert f.values[0] == 1.0
    with pytest.raises(ValueError):
        f.values[0] = 2.0


def test_scaled_and_on_grid(grid, maxwellian_f):
    """Test scaled multiplies the mass and on_grid carries values to a shifted grid."""
    assert maxwellian_f.scaled(2.0).mass() == pytest.approx(2.0, abs=1e-9)
    moved = maxwellian_f.on_grid(grid.shifted([grid.h, 0.0, 0.0]))
    assert np.array_equal(moved.values, maxwellian_f.values)
    assert quadrature(moved, lambda v: v[:, 0]) == pytest.approx(grid.h, abs=1e-9)
    with pytest.raises(KineticError):
        maxwellian_f.on_grid(build_grid(8, 8.0))


def test_sample_distribution():
    """Test sample_distribution evaluates a density at every node."""
    g = build_grid(4, 2.0)
    f = sample_distribution(g, lambda v: np.exp(-np.sum(v * v, axis=1)))
    assert f.values.shape == (64,)
    assert f.values.max() == pytest.approx(np.exp(-0.75))


def test_fit_velocity_domain():
    """Test fit_velocity_domain adds n_sigma standard deviations to the farthest mean."""
    assert fit_velocity_domain([[0.0, 0.0, 0.0]], [4.0 * np.eye(3)], 8.0) == pytest.approx(16.0)
    wide = fit_velocity_domain([[3.0, 4.0, 0.0], [0.0, 0.0, 0.0]], [np.eye(3), np.diag([9.0, 1.0, 1.0])], 2.0)
    assert wide == pytest.approx(7.0)
    with pytest.raises(ValueError):
        fit_velocity_domain([], [])


def test_quadrature_refinement():
    """Test doubling the nodes per axis cuts the Maxwellian mass error at least fourfold."""
    def density(v):
        return np.exp(-0.5 * np.sum(v * v, axis=1)) / (2.0 * np.pi) ** 1.5

    errors = [abs(sample_distribution(build_grid(n, 8.0), density).mass() - 1.0) for n in (8, 16, 32)]
    assert errors[0] > 1e-4
    assert errors[1] <= errors[0] / 4.0
    assert errors[2] <= max(errors[1] / 4.0, 1e-13)
