from typing import Dict, List, Optional, Sequence, Union
import numpy as np
import pandas as pd
from pandas import DataFrame
from tqdm import tqdm
from .utils import KineticError
from .grid_main import DistributionFunction
from .moment_main import MacroState, extract_moments
from .moment_process import SymMat3
from .gaussian_validate import _validate_nu
from .entropy_main import EntropyReport, entropy_production
from .entropy_option import EntropyOption
from .solver_option import SolverConfig
from .solver_validate import _validate_stability, _validate_cfl, _validate_slab_params
from .solver_process import (
    _relaxation_rhs, _advance, _upwind_transport, _slab_invariants, _as_cells
)
from .solver_print import _print_run_start, _print_clipped, _print_run_summary


THETA_KEYS = ("xx", "yy", "zz", "xy", "xz", "yz")


class Trajectory:
    """Time series produced by :func:`run_homogeneous` or :func:`run_slab_1d`.

    Each snapshot is one row of :meth:`to_frame`. Homogeneous runs also keep the
    macroscopic state and the full :class:`EntropyReport` of every snapshot.

    Attributes:
        kind (str): 'relax' or 'slab'.
        config (SolverConfig): The configuration of the run.
        times (List[float]): Snapshot times, increasing.
        rows (List[Dict[str, float]]): Snapshot rows.
        states (List[MacroState]): Snapshot states (relax runs).
        reports (List[EntropyReport]): Snapshot entropy reports (relax runs).
        distributions (List): Snapshot distributions, kept only when
            ``config.store_distributions`` is set.
        l1_to_maxwellian (List[float]): ``||f - M_0||_1`` per snapshot (relax runs).
        clipped_mass (float): Total mass removed by clipping negative values.
        final_values (Optional[np.ndarray]): Node values at the final time; shape
            (nodes,) for relax runs and (nx, nodes) for slab runs.
    """
    def __init__(self, kind: str, config: SolverConfig):
        self.kind = kind
        self.config = config
        self.times: List[float] = []
        self.rows: List[Dict[str, float]] = []
        self.states: List[MacroState] = []
        self.reports: List[EntropyReport] = []
        self.distributions: List = []
        self.l1_to_maxwellian: List[float] = []
        self.clipped_mass = 0.0
        self.final_values: Optional[np.ndarray] = None


    def to_frame(self) -> DataFrame:
        """Snapshot rows as a :class:`pandas.DataFrame`, one row per snapshot."""
        return pd.DataFrame(self.rows)


    def summary(self) -> Dict[str, object]:
        """Scalar diagnostics of the run.

        For relax runs: the fitted and proved decay rates of ``H(f | M_0)``, the
        largest stress-oracle error, entropy-balance residual, entropy increase
        between snapshots, excess over the L1 envelope and conservation drift.
        For slab runs: the drift of the global invariants and the largest global
        entropy increase.
        """
        frame = self.to_frame()
        summary: Dict[str, object] = {
            "kind": self.kind,
            "snapshots": len(self.times),
            "final_time": self.times[-1],
            "clipped_mass": self.clipped_mass
        }
        H_column = "H_f" if self.kind == "relax" else "H_global"
        summary["max_entropy_increase"] = float(np.max(np.diff(frame[H_column]), initial=0.0))
        if self.kind == "relax":
            first = self.states[0]
            sigma = self.config.sigma(first.rho, first.T)
            summary["fitted_rate"] = fit_decay_rate(frame["t"].to_numpy(), frame["rel_entropy"].to_numpy())
            summary["bound_rate"] = theorem_decay_rate(self.config.nu, sigma)
            summary["max_oracle_error"] = max(
                float(np.max(np.abs(
                    state.Theta.to_matrix() - stress_relaxation_oracle(first.Theta, first.T, sigma, t).to_matrix()
                ))) / first.T
                for t, state in zip(self.times, self.states)
            )
            summary["max_balance_residual"] = float(frame["entropy_balance_residual"].abs().max())
            summary["max_l1_excess"] = float((frame["l1_to_maxwellian"] - frame["l1_bound"]).max())
            summary["mass_drift"] = float((frame["rho"] / first.rho - 1.0).abs().max())
            summary["velocity_drift"] = float(
                np.max(np.abs(frame[["U1", "U2", "U3"]].to_numpy() - first.U)) / np.sqrt(first.T)
            )
            summary["temperature_drift"] = float((frame["T"] / first.T - 1.0).abs().max())
        else:
            initial = frame.iloc[0]
            momentum = frame[["momentum1", "momentum2", "momentum3"]].to_numpy()
            speed = np.sqrt(2.0 * initial["energy"] / initial["mass"])
            summary["mass_drift"] = float((frame["mass"] / initial["mass"] - 1.0).abs().max())
            summary["momentum_drift"] = float(np.max(np.abs(momentum - momentum[0])) / (initial["mass"] * speed))
            summary["energy_drift"] = float((frame["energy"] / initial["energy"] - 1.0).abs().max())
        return summary



def prandtl_number(nu: float) -> float:
    """Prandtl number ``1 / (1 - nu)`` of the ES-BGK model."""
    _validate_nu(nu)
    return 1.0 / (1.0 - nu)



def nu_from_prandtl(prandtl: float) -> float:
    """Ellipsoidal parameter ``(Pr - 1) / Pr`` that yields a given Prandtl number.

    Raises:
        :class:`ValueError`: If the resulting nu falls outside (-1/2, 1), that is
            unless ``Pr > 2/3``.

    Examples:
        >>> nu_from_prandtl(2.0 / 3.0 + 1e-9) > -0.5
        True
        >>> nu_from_prandtl(1.0)
        0.0
    """
    if not np.isfinite(prandtl) or prandtl <= 0:
        raise ValueError(f"Prandtl number must be positive, got {prandtl}.")
    nu = (prandtl - 1.0) / prandtl
    _validate_nu(nu)
    return nu



def theorem_decay_rate(nu: float, sigma: float = 3.0) -> float:
    """Proved exponential decay rate ``sigma min{1, (1+2nu)/(1-nu)}`` of ``H(f | M_0)``.

    Examples:
        >>> theorem_decay_rate(-0.25)
        1.2
    """
    _validate_nu(nu)
    return sigma * min(1.0, (1.0 + 2.0 * nu) / (1.0 - nu))



def fit_decay_rate(times: Sequence[float], values: Sequence[float], floor: float = 1e-12) -> float:
    """Least-squares decay rate of ``ln values`` against time.

    Values at or below ``floor`` (the quadrature noise level) are excluded.

    Returns:
        float: Minus the fitted slope, or NaN with fewer than two usable points.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    usable = values > floor
    if np.count_nonzero(usable) < 2:
        return float("nan")
    slope = np.polyfit(times[usable], np.log(values[usable]), 1)[0]
    return float(-slope)



def stress_relaxation_oracle(Theta0: SymMat3, T: float, sigma: float, t: float) -> SymMat3:
    """Exact homogeneous stress relaxation ``T Id + exp(-sigma t) (Theta0 - T Id)``.

    Taking second central moments of the homogeneous equation gives
    ``dTheta/dt = sigma (T Id - Theta)`` independently of nu.

    Raises:
        :class:`KineticError`: If ``trace(Theta0) != 3T`` to 1e-10 relative.

    Examples:
        >>> Theta = stress_relaxation_oracle(SymMat3.diagonal([2.0, 0.5, 0.5]), 1.0, 1.0, np.log(2.0))
        >>> [round(x, 12) for x in Theta.entries()[:3]]
        [1.5, 0.75, 0.75]
    """
    if abs(Theta0.trace() - 3.0 * T) > 1e-10 * 3.0 * T:
        raise KineticError(
            "Initial stress tensor does not match the temperature",
            function="stress_relaxation_oracle",
            quantity="trace(Theta0) - 3T",
            value=Theta0.trace() - 3.0 * T
        )
    decay = float(np.exp(-sigma * t))
    isotropic = SymMat3.identity(T)
    return isotropic + (Theta0 - isotropic).scaled(decay)



def step_homogeneous(f: DistributionFunction, cfg: SolverConfig) -> DistributionFunction:
    """Advance the homogeneous equation ``df/dt = A_nu (M_nu(f) - f)`` by one step.

    ``M_nu`` and ``A_nu`` are re-evaluated from the moments of every Runge-Kutta
    stage. Negative values after the step are clipped to zero and reported.

    Args:
        f (DistributionFunction): Current distribution.
        cfg (SolverConfig): Solver configuration; ``cfg.dt`` is the step.

    Returns:
        :class:`DistributionFunction`: The distribution after one step.

    Raises:
        :class:`ValueError`: If ``dt * A_nu > 0.5``.
        :class:`KineticError`: If the moments of a stage are not realizable.
    """
    state = extract_moments(f)
    _validate_stability(cfg.dt, cfg.collision_frequency(state.rho, state.T))
    values, clipped = _advance(f.values, _relaxation_rhs(f.grid, cfg), cfg.dt, cfg.integrator, f.grid.weight)
    _print_clipped(clipped, cfg.interactive_mode, dt=cfg.dt)
    return DistributionFunction(f.grid, values)



def _step_times(cfg: SolverConfig) -> np.ndarray:
    n_steps = int(np.ceil(cfg.t_end / cfg.dt - 1e-9))
    return np.minimum(cfg.dt * np.arange(1, n_steps + 1), cfg.t_end)



def _relax_row(
    t: float,
    state: MacroState,
    report: EntropyReport,
    residual: float,
    rel_bound: float,
    l1_bound: float
) -> Dict[str, float]:
    row = {"t": t, "rho": state.rho, "U1": state.U[0], "U2": state.U[1], "U3": state.U[2], "T": state.T}
    row.update({f"Theta_{key}": value for key, value in zip(THETA_KEYS, state.Theta.entries())})
    row.update({
        "H_f": report.H_f,
        "rel_entropy": report.rel_entropy,
        "D_nu": report.D_nu,
        "R_nu": report.R_nu_closed,
        "F_nu": report.F_nu,
        "l1_to_maxwellian": report.l1_to_maxwellian,
        "entropy_balance_residual": residual,
        "rel_entropy_bound": rel_bound,
        "l1_bound": l1_bound
    })
    return {key: float(value) for key, value in row.items()}



def run_homogeneous(f0: DistributionFunction, cfg: SolverConfig) -> Trajectory:
    """Integrate the spatially homogeneous ES-BGK equation from ``f0`` to ``cfg.t_end``.

    Every step evaluates the entropy production and accumulates ``int D_nu dt``
    with the trapezoidal rule; every ``cfg.output_stride`` steps (and at the final
    time) a snapshot records the moments, the :class:`EntropyReport`,
    ``||f - M_0||_1``, the entropy-balance residual
    ``H(f(t)) - H(f_0) + int_0^t D_nu ds`` and the proved envelopes
    ``H(f_0 | M_0) exp(-r t)`` and ``sqrt(2 rho H(f_0 | M_0)) exp(-r t / 2)`` with
    ``r = sigma min{1, (1+2nu)/(1-nu)}``. See :ref:`relaxation_runs`.

    Args:
        f0 (DistributionFunction): Initial distribution, strictly positive unless
            ``cfg.log_floor`` is set.
        cfg (SolverConfig): Solver configuration.

    Returns:
        :class:`Trajectory`: The recorded snapshots.

    Raises:
        :class:`ValueError`: If ``dt * A_nu > 0.5`` on the initial data.
        :class:`KineticError`: If a step fails.

    Examples:
        >>> from esbgklab import build_grid, MacroState, SymMat3, ellipsoidal_gaussian, evaluate_gaussian
        >>> grid = build_grid(32, 8.0)
        >>> state = MacroState.from_fields(1.0, [0, 0, 0], 1.0, SymMat3.diagonal([2.0, 0.5, 0.5]))
        >>> f0 = evaluate_gaussian(ellipsoidal_gaussian(state, 0.0), grid)
        >>> traj = run_homogeneous(f0, SolverConfig(nu = 0.0, t_end = 1.0))
        >>> traj.summary()["bound_rate"]
        3.0
    """
    grid = f0.grid
    w = grid.weight
    option = EntropyOption(log_floor=cfg.log_floor)
    state0 = extract_moments(f0)
    A0 = cfg.collision_frequency(state0.rho, state0.T)
    _validate_stability(cfg.dt, A0)
    rate = theorem_decay_rate(cfg.nu, cfg.sigma(state0.rho, state0.T))
    step_times = _step_times(cfg)
    _print_run_start("relax", len(step_times), A0, cfg)

    trajectory = Trajectory("relax", cfg)
    report = entropy_production(f0, cfg.nu, A0, option)
    H0, rel0 = report.H_f, max(report.rel_entropy, 0.0)

    def record(t: float, f: DistributionFunction, state: MacroState, report: EntropyReport, integral: float) -> None:
        trajectory.times.append(float(t))
        trajectory.states.append(state)
        trajectory.reports.append(report)
        trajectory.l1_to_maxwellian.append(report.l1_to_maxwellian)
        if cfg.store_distributions:
            trajectory.distributions.append(f)
        trajectory.rows.append(_relax_row(
            t, state, report, report.H_f - H0 + integral,
            rel0 * np.exp(-rate * t), np.sqrt(2.0 * state0.rho * rel0) * np.exp(-0.5 * rate * t)
        ))

    record(0.0, f0, state0, report, 0.0)
    rhs = _relaxation_rhs(grid, cfg)
    values = f0.values
    integral = 0.0
    t_prev = 0.0
    D_prev = report.D_nu
    for step, t in enumerate(tqdm(step_times, desc="Relaxing", disable=not cfg.interactive_mode), start=1):
        dt = float(t - t_prev)
        values, clipped = _advance(values, rhs, dt, cfg.integrator, w)
        if clipped > 0:
            trajectory.clipped_mass += clipped
            _print_clipped(clipped, cfg.interactive_mode, t=t)
        f = DistributionFunction(grid, values)
        state = extract_moments(f)
        report = entropy_production(f, cfg.nu, cfg.collision_frequency(state.rho, state.T), option)
        integral += 0.5 * dt * (D_prev + report.D_nu)
        D_prev = report.D_nu
        t_prev = float(t)
        if step % cfg.output_stride == 0 or step == len(step_times):
            record(t, f, state, report, integral)

    trajectory.final_values = values
    _print_run_summary(trajectory, cfg.interactive_mode)
    return trajectory



def run_slab_1d(
    f0: Union[DistributionFunction, Sequence[DistributionFunction]],
    cfg: SolverConfig,
    nx: int,
    L: float
) -> Trajectory:
    """Integrate the ES-BGK equation on a periodic slab ``[0, L)`` in ``x_1``.

    Each step is a Strang splitting: half a step of first-order upwind transport
    ``f_t + v_1 f_x = 0``, a full relaxation step in every cell, then another
    half transport step. Snapshots record the slab totals of mass, momentum and
    energy, the global entropy ``sum_x dx H(f(x))`` and the global entropy
    production.

    Args:
        f0: Either one distribution (spatially uniform data) or ``nx`` cell
            distributions on a common velocity grid.
        cfg (SolverConfig): Solver configuration.
        nx (int): Number of cells.
        L (float): Slab length.

    Returns:
        :class:`Trajectory`: The recorded snapshots, with the final cell values in
            ``final_values``.

    Raises:
        :class:`ValueError`: If the CFL number ``dt max|v_1| / dx`` exceeds 0.9 or the
            stability gate fails in some cell.
    """
    _validate_slab_params(nx, L)
    grid, F = _as_cells(f0, nx)
    w = grid.weight
    dx = L / nx
    vx = grid.velocities[:, 0]
    _validate_cfl(cfg.dt, float(np.max(np.abs(vx))), dx)
    option = EntropyOption(log_floor=cfg.log_floor)
    cell_states = [extract_moments(DistributionFunction(grid, cell)) for cell in F]
    A_max = max(cfg.collision_frequency(s.rho, s.T) for s in cell_states)
    _validate_stability(cfg.dt, A_max)
    step_times = _step_times(cfg)
    _print_run_start("slab", len(step_times), A_max, cfg)

    trajectory = Trajectory("slab", cfg)
    rhs = _relaxation_rhs(grid, cfg)

    def record(t: float) -> None:
        mass, momentum, energy = _slab_invariants(F, grid, dx)
        H_global = 0.0
        D_global = 0.0
        for cell in F:
            f = DistributionFunction(grid, cell)
            state = extract_moments(f)
            A_nu = cfg.collision_frequency(state.rho, state.T)
            report = entropy_production(f, cfg.nu, A_nu, option)
            H_global += dx * report.H_f
            D_global += dx * report.D_nu
        trajectory.times.append(float(t))
        if cfg.store_distributions:
            trajectory.distributions.append(F.copy())
        trajectory.rows.append({
            "t": float(t),
            "mass": mass,
            "momentum1": float(momentum[0]),
            "momentum2": float(momentum[1]),
            "momentum3": float(momentum[2]),
            "energy": energy,
            "H_global": H_global,
            "D_global": D_global
        })

    record(0.0)
    t_prev = 0.0
    for step, t in enumerate(tqdm(step_times, desc="Slab", disable=not cfg.interactive_mode), start=1):
        dt = float(t - t_prev)
        F = _upwind_transport(F, vx, 0.5 * dt, dx)
        for i in range(nx):
            F[i], clipped = _advance(F[i], rhs, dt, cfg.integrator, w)
            trajectory.clipped_mass += dx * clipped
        F = _upwind_transport(F, vx, 0.5 * dt, dx)
        t_prev = float(t)
        if step % cfg.output_stride == 0 or step == len(step_times):
            record(t)

    trajectory.final_values = F
    _print_run_summary(trajectory, cfg.interactive_mode)
    return trajectory
