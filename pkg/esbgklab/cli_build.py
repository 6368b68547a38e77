from typing import List, Tuple, Union
import numpy as np
from .cli_option import Scenario
from .grid_main import VelocityGrid, DistributionFunction, build_grid, fit_velocity_domain
from .moment_main import MacroState
from .moment_process import SymMat3
from .gaussian_main import local_maxwellian, multivariate_gaussian, evaluate_gaussian
from .ensemble_build import generate_mixtures, mixture_grid, evaluate_mixture
from .solver_main import nu_from_prandtl
from .solver_option import SolverConfig
from .certify_option import CertifyOption


def _resolve_nu(scenario: Scenario) -> None:
    """Replace nu by ``(Pr - 1) / Pr`` when a Prandtl number is given."""
    if scenario.prandtl is not None:
        scenario.nu = nu_from_prandtl(scenario.prandtl)



def _initial_state(scenario: Scenario) -> MacroState:
    """Unit-density, zero-velocity state of the chosen initial data.

    'equilibrium' has ``Theta = T Id`` with ``T = 1``; 'anisotropic' and
    'sinusoidal' have ``Theta = diag(theta)`` and ``T = mean(theta)``.
    """
    if scenario.init == "equilibrium":
        return MacroState.from_fields(1.0, [0.0, 0.0, 0.0], 1.0)
    theta = np.asarray(scenario.theta, dtype=float)
    return MacroState.from_fields(1.0, [0.0, 0.0, 0.0], float(theta.mean()), SymMat3.diagonal(theta))



def _build_grid(scenario: Scenario, state: MacroState) -> VelocityGrid:
    """Grid of ``grid_n`` points per axis; without ``vmax`` it holds ``n_sigma`` deviations of the state."""
    if scenario.vmax is not None:
        return build_grid(scenario.grid_n, scenario.vmax)
    v_max = fit_velocity_domain([state.U], [state.Theta.to_matrix()], scenario.n_sigma)
    return build_grid(scenario.grid_n, v_max)



def _build_gaussian_data(scenario: Scenario, grid: VelocityGrid, state: MacroState) -> DistributionFunction:
    if scenario.init == "equilibrium":
        return evaluate_gaussian(local_maxwellian(state), grid)
    return evaluate_gaussian(multivariate_gaussian(state), grid)



def _build_initial_data(scenario: Scenario) -> Union[DistributionFunction, List[DistributionFunction]]:
    """Initial distribution of a relax or slab scenario.

    'mixture' takes the first mixture of the seeded ensemble, on a grid sized for
    it. 'sinusoidal' gives ``nx`` cells of the anisotropic Gaussian scaled by
    ``1 + amplitude sin(2 pi x / length)`` at the cell centers.

    Args:
        scenario (Scenario): The validated scenario.

    Returns:
        One :class:`DistributionFunction`, or a list of ``nx`` of them for
            'sinusoidal'.
    """
    if scenario.init == "mixture":
        case = generate_mixtures(1, scenario.seed, scenario.components, scenario.mean_range, scenario.eig_range)[0]
        if scenario.vmax is not None:
            grid = build_grid(scenario.grid_n, scenario.vmax)
        else:
            grid = mixture_grid(case, scenario.grid_n, scenario.n_sigma)
        return evaluate_mixture(case.mixture, grid)

    state = _initial_state(scenario)
    grid = _build_grid(scenario, state)
    f0 = _build_gaussian_data(scenario, grid, state)
    if scenario.init != "sinusoidal":
        return f0
    centers = (np.arange(scenario.nx) + 0.5) * scenario.length / scenario.nx
    profile = 1.0 + scenario.amplitude * np.sin(2.0 * np.pi * centers / scenario.length)
    return [f0.scaled(float(factor)) for factor in profile]



def _build_solver_config(scenario: Scenario) -> SolverConfig:
    """SolverConfig of a relax or slab scenario.

    Mixture data always takes logarithms with the floor, since its far tails
    underflow on a grid sized for the widest component.
    """
    return SolverConfig(
        nu=scenario.nu,
        sigma_const=scenario.sigma_const,
        sigma_alpha=scenario.sigma_alpha,
        sigma_beta=scenario.sigma_beta,
        dt=scenario.dt,
        t_end=scenario.t_end,
        integrator=scenario.integrator,
        conservation_correction=scenario.correction,
        output_stride=scenario.stride,
        interactive_mode=scenario.interactive_mode,
        log_floor=scenario.log_floor or scenario.init == "mixture"
    )



def _build_certify_option(scenario: Scenario) -> CertifyOption:
    return CertifyOption(
        count=scenario.count,
        seed=scenario.seed,
        grid_n=scenario.grid_n,
        nu_values=scenario.nu_values,
        sigma=scenario.sigma_const,
        tolerance=scenario.tolerance,
        exact_tolerance=scenario.exact_tolerance,
        n_sigma=scenario.n_sigma,
        components=scenario.components,
        mean_range=scenario.mean_range,
        eig_range=scenario.eig_range,
        workers=scenario.workers,
        interactive_mode=scenario.interactive_mode
    )



def _build_linearized_grid(scenario: Scenario) -> VelocityGrid:
    """Grid for the linearized sweep around the unit Maxwellian."""
    return _build_grid(scenario, MacroState.from_fields(1.0, [0.0, 0.0, 0.0], 1.0))



def _metadata_header(scenario: Scenario, grid: VelocityGrid) -> List[Tuple[str, object]]:
    """Pairs recorded in the header of every output file."""
    return [
        ("kind", scenario.kind),
        ("grid_n", grid.n_per_axis),
        ("v_max", grid.v_max),
        ("nu", scenario.nu),
        ("sigma_const", scenario.sigma_const),
        ("sigma_alpha", scenario.sigma_alpha),
        ("sigma_beta", scenario.sigma_beta),
        ("dt", scenario.dt),
        ("t_end", scenario.t_end),
        ("integrator", scenario.integrator),
        ("correction", scenario.correction),
        ("init", scenario.init),
        ("seed", scenario.seed),
        ("tolerance", scenario.tolerance)
    ]
