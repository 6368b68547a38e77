from typing import Dict


def _print_certify_start(count: int, nu_count: int, grid_n: int, interactive_mode: bool) -> None:
    if interactive_mode:
        print(f"ℹ Certifying {count} mixtures x {nu_count} values of nu on {grid_n}^3 grids...")



def _print_empty_ensemble(interactive_mode: bool) -> None:
    """Warn that a zero-count ensemble certifies nothing."""
    if interactive_mode:
        print("⚠️ Ensemble is empty; nothing was certified - Function: certify_ensemble")



def _print_certify_status(violations: Dict[str, int], rows: int, interactive_mode: bool) -> None:
    """Print the outcome of a certification run.

    Args:
        violations (Dict[str, int]): Violation count per check.
        rows (int): Number of (case, nu) rows evaluated.
        interactive_mode (bool): Whether to print.
    """
    if not interactive_mode:
        return
    failed = {name: count for name, count in violations.items() if count > 0}
    if not failed:
        print(f"✔ All {len(violations)} checks passed on {rows} rows.")
        return
    print(f"⚠️ {sum(failed.values())} violations in {len(failed)} checks:")
    for name, count in failed.items():
        print(f"  - {name}: {count}")
