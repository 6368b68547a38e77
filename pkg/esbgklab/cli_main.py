import argparse
import os
import sys
from typing import Dict, List, Optional, Tuple
import pandas as pd
from dotenv import load_dotenv, dotenv_values
from .utils import KineticError
from .cli_option import Scenario, SCENARIO_FIELDS, VALID_INITS, _flag
from .cli_validate import _validate_scenario_keys, _validate_scenario
from .cli_build import (
    _resolve_nu,
    _build_initial_data,
    _build_solver_config,
    _build_certify_option,
    _build_linearized_grid,
    _metadata_header
)
from .cli_clean import _format_json, _format_csv, _write_text, _certification_table
from .cli_print import (
    _print_scenario,
    _print_written,
    _print_certification_table,
    _print_worst_case,
    _print_error
)
from .solver_main import run_homogeneous, run_slab_1d, Trajectory
from .certify_main import certify_ensemble, certify_stress_ratio, certify_linearized


EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every subcommand.

    Defaults are suppressed so that only flags given on the command line
    override the scenario file.
    """
    add = parser.add_argument
    add("--scenario", metavar="PATH", help="flat key=value scenario file (default: $ESBGK_SCENARIO)")
    add("--nu", type=float, metavar="<float>", help="ellipsoidal parameter in (-1/2, 1)")
    add("--prandtl", type=float, metavar="<float>", help="Prandtl number; sets nu = (Pr - 1) / Pr")
    add("--nu-values", type=SCENARIO_FIELDS["nu_values"], metavar="<list>", help="comma-separated values of nu")
    add("--sigma-const", type=float, metavar="<float>", help="constant collision frequency")
    add("--sigma-alpha", type=float, metavar="<float>", help="power-law density exponent of sigma")
    add("--sigma-beta", type=float, metavar="<float>", help="power-law temperature exponent of sigma")
    add("--grid-n", type=int, metavar="<int>", help="grid points per velocity axis")
    add("--vmax", type=float, metavar="<float>", help="velocity half-width (default: fitted to the data)")
    add("--n-sigma", type=float, metavar="<float>", help="standard deviations held by a fitted grid")
    add("--dt", type=float, metavar="<float>", help="time step")
    add("--t-end", type=float, metavar="<float>", help="final time")
    add("--stride", type=int, metavar="<int>", help="snapshot stride")
    add("--integrator", choices=("rk4", "euler"), help="time integrator")
    add("--correction", type=_flag, metavar="{off,on}", help="conservation correction of the Gaussian")
    add("--log-floor", type=_flag, metavar="{off,on}", help="floor f at 1e-300 inside logarithms")
    add("--init", choices=VALID_INITS, help="initial data")
    add("--theta", type=SCENARIO_FIELDS["theta"], metavar="<list>", help="diagonal stress tensor, e.g. 2,0.5,0.5")
    add("--nx", type=int, metavar="<int>", help="slab cells")
    add("--length", type=float, metavar="<float>", help="slab length")
    add("--amplitude", type=float, metavar="<float>", help="density amplitude of sinusoidal data")
    add("--count", type=int, metavar="<int>", help="ensemble size or number of random functions")
    add("--seed", type=int, metavar="<int>", help="random seed")
    add("--components", type=SCENARIO_FIELDS["components"], metavar="<min,max>", help="mixture components")
    add("--mean-range", type=float, metavar="<float>", help="half-width of the box of component means")
    add("--eig-range", type=SCENARIO_FIELDS["eig_range"], metavar="<min,max>", help="covariance eigenvalue range")
    add("--tolerance", type=float, metavar="<float>", help="relative tolerance of quadrature-limited checks")
    add("--exact-tolerance", type=float, metavar="<float>", help="tolerance of closed-form checks")
    add("--stress-count", type=int, metavar="<int>", help="random states of the stress ratio sweep")
    add("--workers", type=int, metavar="<int>", help="certification worker threads")
    add("--format", choices=("csv", "json"), help="output format")
    add("--out", metavar="PATH", help="output path (default: <kind>.<format>)")
    add("--quiet", action="store_true", help="suppress status messages and progress bars")



def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the subcommands relax, slab, certify and linearized."""
    parser = argparse.ArgumentParser(
        prog="esbgklab",
        description="Entropy diagnostics, relaxation runs and inequality certification for the ES-BGK model."
    )
    subparsers = parser.add_subparsers(dest="kind", required=True, metavar="{relax,slab,certify,linearized}")
    helps = {
        "relax": "spatially homogeneous relaxation; trajectory CSV plus summary",
        "slab": "periodic 1D slab with Strang splitting",
        "certify": "certify the entropy inequalities on a random mixture ensemble",
        "linearized": "sweep the linearized dissipation identity over nu"
    }
    for kind, text in helps.items():
        sub = subparsers.add_parser(kind, help=text, argument_default=argparse.SUPPRESS)
        _add_common_arguments(sub)
    return parser



def _load_scenario(args: argparse.Namespace) -> Tuple[Scenario, str]:
    """Merge defaults, the scenario file and the flags into a validated Scenario.

    Args:
        args (argparse.Namespace): Parsed command line.

    Returns:
        Tuple[Scenario, str]: The scenario and the scenario file path ('' if none).

    Raises:
        OSError: If the scenario file does not exist.
        ValueError: If a key is unknown or a value is invalid.
    """
    flags = vars(args).copy()
    source = flags.pop("scenario", None) or os.getenv("ESBGK_SCENARIO") or ""
    quiet = flags.pop("quiet", False)
    values: Dict[str, object] = {}
    if source:
        if not os.path.isfile(source):
            raise FileNotFoundError(f"Scenario file not found: '{source}'.")
        file_values = dotenv_values(source)
        _validate_scenario_keys(file_values, source)
        for key, text in file_values.items():
            if text is None or text == "":
                continue
            try:
                values[key] = SCENARIO_FIELDS[key](text)
            except ValueError as e:
                raise ValueError(f"Invalid value for '{key}' in '{source}': '{text}'.") from e
    # the subcommand always names the kind
    values.update(flags)
    scenario = Scenario(**values, interactive_mode=not quiet)
    _resolve_nu(scenario)
    _validate_scenario(scenario)
    return scenario, source



def _summary_path(out: str) -> str:
    root, _ = os.path.splitext(out)
    return f"{root}.summary.json"



def _write_trajectory(scenario: Scenario, trajectory: Trajectory, grid) -> None:
    """Write a trajectory as CSV plus a summary JSON, or as one JSON document."""
    header = _metadata_header(scenario, grid)
    summary = trajectory.summary()
    if scenario.format == "csv":
        _write_text(scenario.out, _format_csv(trajectory.to_frame(), header))
        _print_written(scenario.out, scenario.interactive_mode)
        path = _summary_path(scenario.out)
        _write_text(path, _format_json({"metadata": dict(header), "summary": summary}))
        _print_written(path, scenario.interactive_mode)
    else:
        document = {"metadata": dict(header), "summary": summary, "trajectory": trajectory.to_frame()}
        _write_text(scenario.out, _format_json(document))
        _print_written(scenario.out, scenario.interactive_mode)



def cmd_relax(scenario: Scenario) -> int:
    """Run a spatially homogeneous relaxation and write its trajectory.

    Args:
        scenario (Scenario): A validated scenario of kind 'relax'.

    Returns:
        int: The exit code, 0.
    """
    f0 = _build_initial_data(scenario)
    trajectory = run_homogeneous(f0, _build_solver_config(scenario))
    _write_trajectory(scenario, trajectory, f0.grid)
    return EXIT_OK



def cmd_slab(scenario: Scenario) -> int:
    """Run the periodic slab and write its trajectory of global invariants."""
    f0 = _build_initial_data(scenario)
    grid = f0[0].grid if isinstance(f0, list) else f0.grid
    trajectory = run_slab_1d(f0, _build_solver_config(scenario), scenario.nx, scenario.length)
    _write_trajectory(scenario, trajectory, grid)
    return EXIT_OK



def cmd_certify(scenario: Scenario) -> int:
    """Certify the entropy inequalities and write the report.

    Runs :func:`certify_ensemble` and, for a non-empty ensemble, the closed-form
    stress ratio sweep. The human table goes to standard output; the JSON report
    (with every case for ``--format json``, or with the cases in a separate CSV
    for ``--format csv``) goes to ``scenario.out``.

    Args:
        scenario (Scenario): A validated scenario of kind 'certify'.

    Returns:
        int: 0 when no check was violated, otherwise 1; the worst case is then
            dumped to standard error.
    """
    report = certify_ensemble(_build_certify_option(scenario))
    if scenario.count > 0:
        stress = certify_stress_ratio(
            scenario.stress_count, scenario.seed, scenario.exact_tolerance, scenario.nu_values
        )
        report.add_section("stress_ratio", stress)

    table = _certification_table(report.minima, report.violations)
    for name, section in report.sections.items():
        extreme = float(section["min_margin"].min()) if "min_margin" in section else None
        row = pd.DataFrame([{"check": name, "extreme": extreme, "violations": int(section["violations"].sum())}])
        table = pd.concat([table, row], ignore_index=True) if not table.empty else row
    _print_certification_table(table, report.passed)

    if scenario.format == "json":
        document = report.to_dict(include_cases=True)
        document["scenario"] = scenario.to_dict()
        _write_text(scenario.out, _format_json(document))
        _print_written(scenario.out, scenario.interactive_mode)
    else:
        _write_text(scenario.out, _format_csv(report.cases, [("seed", scenario.seed), ("count", scenario.count)]))
        _print_written(scenario.out, scenario.interactive_mode)
        root, _ = os.path.splitext(scenario.out)
        document = report.to_dict(include_cases=False)
        document["scenario"] = scenario.to_dict()
        _write_text(f"{root}.report.json", _format_json(document))
        _print_written(f"{root}.report.json", scenario.interactive_mode)

    if report.passed:
        return EXIT_OK
    if report.worst_case is not None:
        _print_worst_case(_format_json(report.worst_case))
    return EXIT_VIOLATION



def cmd_linearized(scenario: Scenario) -> int:
    """Sweep the linearized dissipation identity and write one row per nu.

    Returns:
        int: 0 when every error stays below 1e-8, otherwise 1.
    """
    grid = _build_linearized_grid(scenario)
    table = certify_linearized(
        grid, scenario.nu_values, scenario.count, scenario.seed, interactive_mode=scenario.interactive_mode
    )
    header = _metadata_header(scenario, grid)
    if scenario.format == "csv":
        _write_text(scenario.out, _format_csv(table, header))
    else:
        _write_text(scenario.out, _format_json({"metadata": dict(header), "sweep": table}))
    _print_written(scenario.out, scenario.interactive_mode)
    return EXIT_OK if int(table["violations"].sum()) == 0 else EXIT_VIOLATION



COMMANDS = {
    "relax": cmd_relax,
    "slab": cmd_slab,
    "certify": cmd_certify,
    "linearized": cmd_linearized
}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``esbgklab`` command.

    Loads a ``.env`` file first, so ``ESBGK_SCENARIO`` may name a default
    scenario file. See :ref:`scenario_files`.

    Args:
        argv (Optional[List[str]]): Arguments without the program name. Defaults
            to ``sys.argv[1:]``.

    Returns:
        int: 0 on success, 1 on an inequality violation, 2 on a configuration or
            I/O error, 3 on a numerical failure. Invalid flags make argparse
            exit with 2.

    Examples:
        >>> main(["certify", "--count", "0", "--quiet", "--out", "empty.json"])
        No checks were evaluated.
        CERTIFIED
        0
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        scenario, source = _load_scenario(args)
        _print_scenario(scenario, source)
        return COMMANDS[scenario.kind](scenario)
    except KineticError as e:
        _print_error(e)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as e:
        _print_error(e)
        return EXIT_CONFIG



if __name__ == "__main__":
    sys.exit(main())
