from typing import Dict, List, Tuple
import numpy as np
import pandas as pd
from pandas import DataFrame
from .utils import LOG_FLOOR
from .grid_main import DistributionFunction
from .entropy_main import entropy_production, diperna_lions_check, kullback_margin
from .entropy_option import EntropyOption
from .ensemble_build import MixtureCase, mixture_grid, evaluate_mixture


MARGIN_NAMES = (
    "production_bound",
    "convexity",
    "gaussian_gap",
    "maxwellian_below_gaussian",
    "gaussian_below_f",
    "stress_ratio",
    "remainder_sign",
    "remainder_floor",
    "relative_entropy"
)


def _truncation_column(R: float) -> str:
    return f"truncation_{R:.6g}"



def _evaluate_case(case: MixtureCase, option) -> List[Dict[str, float]]:
    """Certification rows of one mixture, one row per value of nu."""
    grid = mixture_grid(case, option.grid_n, option.n_sigma)
    f = evaluate_mixture(case.mixture, grid)
    entropy_option = EntropyOption(log_floor=option.log_floor)

    # the Kullback pair is floored so that neither side vanishes where the other does not
    f_pos = DistributionFunction(grid, np.maximum(f.values, LOG_FLOOR))
    g_pos = evaluate_mixture(case.partner, grid)
    g_pos = DistributionFunction(grid, np.maximum(g_pos.values, LOG_FLOOR))
    g_pos = g_pos.scaled(f_pos.mass() / g_pos.mass())
    kullback = kullback_margin(f_pos, g_pos)

    rows = []
    for nu in option.nu_values:
        A_nu = option.sigma / (1.0 - nu)
        report = entropy_production(f, nu, A_nu, entropy_option)
        row = {
            "case": case.index,
            "nu": nu,
            "A_nu": A_nu,
            "v_max": grid.v_max,
            "rho": report.rho,
            "T": report.T,
            "H_f": report.H_f,
            "H_M0": report.H_M0,
            "H_M1": np.nan if report.H_M1 is None else report.H_M1,
            "H_Mnu": report.H_Mnu,
            "rel_entropy": report.rel_entropy,
            "D_nu": report.D_nu,
            "E_part": report.E_part,
            "R_nu": report.R_nu,
            "R_nu_closed": report.R_nu_closed,
            "F_nu": report.F_nu,
            "l1_to_maxwellian": report.l1_to_maxwellian,
            "remainder_consistency": report.errors["remainder_consistency"],
            "split_consistency": report.errors["split_consistency"],
            "kullback": kullback,
            "equilibrium": 1e-3 - report.l1_to_maxwellian if report.D_nu <= 1e-8 else np.nan
        }
        for name in MARGIN_NAMES:
            value = report.margins[name]
            row[name] = np.nan if value is None else value
        for R in option.truncation_levels:
            row[_truncation_column(R)] = diperna_lions_check(f, nu, R, entropy_option).max_violation
        rows.append(row)
    return rows



def _checks(frame: DataFrame, option) -> Dict[str, Tuple[str, pd.Series, pd.Series]]:
    """Named checks as ``(column, value, allowance)``.

    Lower-bound checks pass when ``value >= -allowance``; upper-bound checks
    (``column`` prefixed with '<') pass when ``value <= allowance``.
    """
    tol = option.tolerance
    exact = option.exact_tolerance
    one = pd.Series(1.0, index=frame.index)
    checks = {
        "production_bound": ("production_bound", tol * (1.0 + frame["D_nu"].abs())),
        "convexity": ("convexity", tol * (1.0 + frame["D_nu"].abs())),
        "gaussian_gap": ("gaussian_gap", exact * (1.0 + frame["H_M0"].abs())),
        "maxwellian_below_gaussian": ("maxwellian_below_gaussian", exact * (1.0 + frame["H_M0"].abs())),
        "gaussian_below_f": ("gaussian_below_f", tol * (1.0 + frame["H_f"].abs())),
        "stress_ratio": ("stress_ratio", exact * one),
        "remainder_sign": ("remainder_sign", option.remainder_tolerance * frame["A_nu"] * frame["rho"]),
        "remainder_floor": ("remainder_floor", exact * frame["A_nu"] * frame["rho"]),
        "relative_entropy": ("relative_entropy", 1e-10 * one),
        "kullback": ("kullback", tol * one),
        "equilibrium": ("equilibrium", 0.0 * one),
        "remainder_consistency": ("<remainder_consistency", tol * one),
        "split_consistency": ("<split_consistency", option.split_tolerance * one)
    }
    for R in option.truncation_levels:
        column = _truncation_column(R)
        checks[column] = ("<" + column, exact * one)
    return {name: (column, allowance) for name, (column, allowance) in checks.items()}



def _deficits(frame: DataFrame, option) -> DataFrame:
    """Per-row deficit of every check; positive entries are violations, NaN is skipped."""
    deficits = {}
    for name, (column, allowance) in _checks(frame, option).items():
        if column.startswith("<"):
            deficits[name] = frame[column[1:]] - allowance
        else:
            deficits[name] = -allowance - frame[column]
    return pd.DataFrame(deficits, index=frame.index)



def _minima(frame: DataFrame, option) -> Dict[str, float]:
    """Global minimum of every lower-bound check and maximum of every upper-bound one."""
    result = {}
    for name, (column, _) in _checks(frame, option).items():
        series = frame[column.lstrip("<")].dropna()
        if series.empty:
            result[name] = None
        elif column.startswith("<"):
            result[name] = float(series.max())
        else:
            result[name] = float(series.min())
    return result
