import sys
from pandas import DataFrame
from .cli_option import Scenario


def _print_scenario(scenario: Scenario, source: str) -> None:
    """Print the kind of run and where its scenario came from.

    Args:
        scenario (Scenario): The merged scenario.
        source (str): Scenario file path, or '' when only flags were given.
    """
    if scenario.interactive_mode:
        origin = f" from '{source}'" if source else ""
        print(f"ℹ Running '{scenario.kind}' scenario{origin} with nu = {scenario.nu:g}...")



def _print_written(path: str, interactive_mode: bool) -> None:
    if interactive_mode:
        print(f"✔ Wrote {path}")



def _print_certification_table(table: DataFrame, passed: bool) -> None:
    """Print the human-readable certification table and the verdict.

    Printed regardless of interactive mode: the table is the human half of the
    certification report.
    """
    if table.empty:
        print("No checks were evaluated.")
    else:
        print(table.to_string(index=False, float_format=lambda x: f"{x:.3e}"))
    print("CERTIFIED" if passed else "VIOLATIONS FOUND")



def _print_worst_case(text: str) -> None:
    """Dump the worst violating case to standard error for reproduction."""
    print("⚠️ Worst case:", file=sys.stderr)
    print(text, file=sys.stderr)



def _print_error(error: Exception) -> None:
    """Print an error message to standard error."""
    print(f"✖ {type(error).__name__}: {error}", file=sys.stderr)
