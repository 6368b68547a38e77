from dataclasses import dataclass
from typing import List, Tuple
import numpy as np
from scipy.stats import special_ortho_group
from .grid_main import VelocityGrid, DistributionFunction, build_grid, fit_velocity_domain
from .gaussian_main import gaussian_from_covariance


@dataclass(frozen=True)
class Mixture:
    """A weighted sum of anisotropic Gaussian components.

    Attributes:
        weights (np.ndarray): Component masses, shape (k,).
        means (np.ndarray): Component mean velocities, shape (k, 3).
        covariances (np.ndarray): Component covariances, shape (k, 3, 3).
    """
    weights: np.ndarray
    means: np.ndarray
    covariances: np.ndarray


    def to_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "means": self.means.tolist(),
            "covariances": self.covariances.tolist()
        }



@dataclass(frozen=True)
class MixtureCase:
    """One seeded test case: a mixture ``f`` and an independent partner ``g``.

    Attributes:
        index (int): Position of the case in the ensemble.
        seed (int): Ensemble seed the case was spawned from.
        mixture (Mixture): The test distribution.
        partner (Mixture): Partner used for the Kullback inequality.
    """
    index: int
    seed: int
    mixture: Mixture
    partner: Mixture



def _build_mixture(
    rng: np.random.Generator,
    components: Tuple[int, int],
    mean_range: float,
    eig_range: Tuple[float, float]
) -> Mixture:
    k = int(rng.integers(components[0], components[1] + 1))
    weights = rng.dirichlet(np.ones(k))
    means = rng.uniform(-mean_range, mean_range, size=(k, 3))
    covariances = []
    for _ in range(k):
        rotation = special_ortho_group.rvs(3, random_state=rng)
        eigenvalues = rng.uniform(eig_range[0], eig_range[1], size=3)
        covariance = (rotation * eigenvalues) @ rotation.T
        covariances.append(0.5 * (covariance + covariance.T))
    return Mixture(weights=weights, means=means, covariances=np.array(covariances))



def generate_mixtures(
    count: int,
    seed: int,
    components: Tuple[int, int] = (2, 4),
    mean_range: float = 1.0,
    eig_range: Tuple[float, float] = (0.3, 2.0)
) -> List[MixtureCase]:
    """Generate a seeded ensemble of random Gaussian mixtures.

    Every case draws from its own stream spawned from ``SeedSequence(seed)``, so a
    case depends only on the seed and its index. Each mixture has 2 to 4
    components with Dirichlet weights, means uniform in
    ``[-mean_range, mean_range]^3`` and covariance eigenvalues uniform in
    ``eig_range`` under a uniformly random rotation.

    Args:
        count (int): Number of cases, nonnegative.
        seed (int): Ensemble seed.
        components (Tuple[int, int]): Inclusive range of the component count.
            Defaults to (2, 4).
        mean_range (float): Half-width of the mean box. Defaults to 1.
        eig_range (Tuple[float, float]): Range of covariance eigenvalues.
            Defaults to (0.3, 2.0).

    Returns:
        List[MixtureCase]: The cases, in index order.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    cases = []
    for index, child in enumerate(children):
        rng = np.random.default_rng(child)
        mixture = _build_mixture(rng, components, mean_range, eig_range)
        partner = _build_mixture(rng, components, mean_range, eig_range)
        cases.append(MixtureCase(index=index, seed=seed, mixture=mixture, partner=partner))
    return cases



def mixture_grid(case: MixtureCase, n_per_axis: int, n_sigma: float = 8.0) -> VelocityGrid:
    """A grid whose half-width holds every component of ``f`` and ``g`` to ``n_sigma`` deviations."""
    means = np.concatenate([case.mixture.means, case.partner.means])
    covariances = np.concatenate([case.mixture.covariances, case.partner.covariances])
    return build_grid(n_per_axis, fit_velocity_domain(means, covariances, n_sigma))



def evaluate_mixture(mixture: Mixture, grid: VelocityGrid) -> DistributionFunction:
    """Sample a mixture at the grid nodes."""
    values = np.zeros(grid.size)
    for weight, mean, covariance in zip(mixture.weights, mixture.means, mixture.covariances):
        values += gaussian_from_covariance(weight, mean, covariance).density(grid.velocities)
    return DistributionFunction(grid, values)
