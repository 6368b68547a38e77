from typing import Optional


def _print_run_start(kind: str, n_steps: int, A_nu: float, cfg) -> None:
    """Print the parameters of a trajectory run.

    Args:
        kind (str): 'relax' or 'slab'.
        n_steps (int): Number of time steps.
        A_nu (float): Initial relaxation rate.
        cfg (SolverConfig): The solver configuration.
    """
    if cfg.interactive_mode:
        print(
            f"ℹ Starting {kind} run: nu={cfg.nu:g}, A_nu={A_nu:.6g}, dt={cfg.dt:g}, "
            f"t_end={cfg.t_end:g}, {n_steps} steps ({cfg.integrator})"
        )



def _print_clipped(clipped_mass: float, interactive_mode: bool, t: Optional[float] = None, dt: Optional[float] = None) -> None:
    """Warn about negative values clipped after a step.

    Names the time of the step inside a run, or the step size for a single step.
    """
    if interactive_mode and clipped_mass > 0:
        where = f"at t={t:.6g}" if t is not None else f"in one step of size dt={dt:g}"
        print(f"⚠️ Clipped negative mass {clipped_mass:.3e} {where} - Function: step_homogeneous")



def _print_run_summary(trajectory, interactive_mode: bool) -> None:
    """Print the outcome of a trajectory run.

    Args:
        trajectory (Trajectory): The finished trajectory.
        interactive_mode (bool): Whether to print.
    """
    if not interactive_mode:
        return
    print(f"✔ Recorded {len(trajectory.times)} snapshots up to t={trajectory.times[-1]:.6g}.")
    if trajectory.clipped_mass > 0:
        print(f"⚠️ Total clipped mass {trajectory.clipped_mass:.3e}; the run is under-resolved.")
