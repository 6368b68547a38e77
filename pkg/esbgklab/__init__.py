from .grid_main import VelocityGrid, DistributionFunction, build_grid, quadrature, sample_distribution, fit_velocity_domain
from .moment_main import MacroState, extract_moments
from .moment_process import SymMat3, eigendecompose, det3, inverse3
from .gaussian_process import TemperatureTensor
from .gaussian_main import (
    EllipsoidalGaussian, temperature_tensor, ellipsoidal_gaussian, local_maxwellian, multivariate_gaussian,
    gaussian_from_covariance, evaluate_gaussian, gaussian_entropy_closed_form, entropy_gap_closed_form,
    gaussian_gap_bound, conservation_correct
)
from .entropy_main import (
    EntropyReport, TruncationReport, h_functional, relative_entropy, kullback_margin, f_nu_scalar,
    entropy_production, diperna_lions_check
)
from .entropy_option import EntropyOption
from .solver_main import (
    Trajectory, prandtl_number, nu_from_prandtl, theorem_decay_rate, fit_decay_rate, stress_relaxation_oracle,
    step_homogeneous, run_homogeneous, run_slab_1d
)
from .solver_option import SolverConfig
from .linear_main import LinearizedBasis, DirichletForm, build_basis, get_basis, project, apply_L, dirichlet_form, block_eigenvalues
from .ensemble_build import Mixture, MixtureCase, generate_mixtures, mixture_grid, evaluate_mixture
from .certify_main import CertificationReport, certify_ensemble, certify_stress_ratio, certify_linearized
from .certify_option import CertifyOption
from .cli_option import Scenario
from .cli_main import main, build_parser, cmd_relax, cmd_slab, cmd_certify, cmd_linearized
from .utils import KineticError, NU_GRID

__all__ = [
    'VelocityGrid', 'DistributionFunction', 'build_grid', 'quadrature', 'sample_distribution', 'fit_velocity_domain',
    'MacroState', 'extract_moments', 'SymMat3', 'eigendecompose', 'det3', 'inverse3',
    'TemperatureTensor', 'EllipsoidalGaussian', 'temperature_tensor', 'ellipsoidal_gaussian', 'local_maxwellian',
    'multivariate_gaussian', 'gaussian_from_covariance', 'evaluate_gaussian', 'gaussian_entropy_closed_form',
    'entropy_gap_closed_form', 'gaussian_gap_bound', 'conservation_correct',
    'EntropyReport', 'TruncationReport', 'EntropyOption', 'h_functional', 'relative_entropy', 'kullback_margin',
    'f_nu_scalar', 'entropy_production', 'diperna_lions_check',
    'Trajectory', 'SolverConfig', 'prandtl_number', 'nu_from_prandtl', 'theorem_decay_rate', 'fit_decay_rate',
    'stress_relaxation_oracle', 'step_homogeneous', 'run_homogeneous', 'run_slab_1d',
    'LinearizedBasis', 'DirichletForm', 'build_basis', 'get_basis', 'project', 'apply_L', 'dirichlet_form',
    'block_eigenvalues',
    'Mixture', 'MixtureCase', 'generate_mixtures', 'mixture_grid', 'evaluate_mixture',
    'CertificationReport', 'CertifyOption', 'certify_ensemble', 'certify_stress_ratio', 'certify_linearized',
    'Scenario', 'main', 'build_parser', 'cmd_relax', 'cmd_slab', 'cmd_certify', 'cmd_linearized',
    'KineticError', 'NU_GRID'
]
