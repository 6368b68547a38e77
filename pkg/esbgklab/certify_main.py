from multiprocessing.pool import ThreadPool
from typing import Dict, Optional, Sequence
import platform
import numpy as np
import pandas as pd
from pandas import DataFrame
from tqdm import tqdm
from .utils import NU_GRID
from .grid_main import VelocityGrid
from .entropy_main import f_nu_scalar
from .entropy_process import _remainder_floor
from .linear_main import get_basis, dirichlet_form, block_eigenvalues
from .ensemble_build import generate_mixtures
from .certify_option import CertifyOption
from .certify_validate import _validate_certify_option
from .certify_process import _evaluate_case, _deficits, _minima
from .certify_print import _print_certify_start, _print_empty_ensemble, _print_certify_status


class CertificationReport:
    """Outcome of a certification run.

    Args:
        cases (DataFrame): One row per (case, nu) pair with every functional,
            margin and consistency error.
        minima (Dict[str, Optional[float]]): Global minimum of every lower-bound
            check (maximum for upper-bound checks), None when the check never applied.
        violations (Dict[str, int]): Number of rows violating each check beyond
            its tolerance.
        worst_case (Optional[dict]): Full state of the worst violating row, with
            the mixture that reproduces it, or None when nothing failed.
        metadata (dict): Options, tolerances and environment.

    Attributes:
        Same names as the arguments; ``sections`` holds additional check tables
        (for example the closed-form stress ratio sweep) keyed by name, each
        with a ``violations`` column.
    """
    def __init__(
        self,
        cases: DataFrame,
        minima: Dict[str, Optional[float]],
        violations: Dict[str, int],
        worst_case: Optional[dict],
        metadata: dict
    ):
        self.cases = cases
        self.minima = minima
        self.violations = violations
        self.worst_case = worst_case
        self.metadata = metadata
        self.sections: Dict[str, DataFrame] = {}


    @property
    def violation_count(self) -> int:
        total = sum(self.violations.values())
        for table in self.sections.values():
            total += int(table["violations"].sum()) if not table.empty else 0
        return total


    @property
    def passed(self) -> bool:
        """Whether no check was violated."""
        return self.violation_count == 0


    def add_section(self, name: str, table: DataFrame) -> None:
        self.sections[name] = table


    def to_dict(self, include_cases: bool = True) -> dict:
        """Nested dict and list representation; NaN values are kept as float('nan')."""
        document = {
            "passed": self.passed,
            "violation_count": self.violation_count,
            "violations": dict(self.violations),
            "minima": dict(self.minima),
            "worst_case": self.worst_case,
            "metadata": self.metadata,
            "sections": {name: table.to_dict(orient="records") for name, table in self.sections.items()}
        }
        if include_cases:
            document["cases"] = self.cases.to_dict(orient="records")
        return document



def _metadata(option: CertifyOption) -> dict:
    return {
        "option": option.to_dict(),
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "python": platform.python_version()
    }



def certify_ensemble(option: Optional[CertifyOption] = None) -> CertificationReport:
    """Certify the entropy inequalities on a seeded ensemble of random mixtures.

    For every mixture and every value of nu, evaluates :func:`entropy_production`
    with ``A_nu = sigma / (1 - nu)``, the truncation split at every level and the
    Kullback inequality against an independent partner mixture of equal mass,
    then counts the rows violating each check beyond its tolerance:

    - production bound ``D_nu >= min{1+2nu, 1-nu} A_nu H(f | M_0)`` and its
      convexity step;
    - Gaussian entropy gap ``H(M_0) - H(M_nu) >= max{nu, -2nu} (H(M_0) - H(M_1))``;
    - the chain ``H(M_0) <= H(M_1) <= H(f)``;
    - stress-ratio bounds, remainder sign ``nu R_nu >= 0`` and the negative-nu
      remainder floor;
    - remainder consistency (quadrature against closed form) and the
      reconstruction of ``D_nu`` from its parts;
    - the pointwise truncation split and the Kullback inequality.

    Cases run on ``option.workers`` threads; rows are gathered in case order, so
    the report depends only on the options. See :ref:`certification`.

    Args:
        option (Optional[CertifyOption]): Ensemble, grid and tolerances. Defaults to
            :class:`CertifyOption`.

    Returns:
        :class:`CertificationReport`: Per-row margins, minima, violation counts and
            the worst case.

    Raises:
        :class:`ValueError`: If an option is out of range.

    Examples:
        >>> from esbgklab import CertifyOption, certify_ensemble
        >>> report = certify_ensemble(CertifyOption(count = 20, grid_n = 32))
        >>> report.passed, report.violations["production_bound"]
        (True, 0)
    """
    option = option or CertifyOption()
    _validate_certify_option(option)
    metadata = _metadata(option)
    if option.count == 0:
        _print_empty_ensemble(option.interactive_mode)
        return CertificationReport(DataFrame(), {}, {}, None, metadata)

    _print_certify_start(option.count, len(option.nu_values), option.grid_n, option.interactive_mode)
    cases = generate_mixtures(option.count, option.seed, option.components, option.mean_range, option.eig_range)

    def evaluate(case):
        return _evaluate_case(case, option)

    with ThreadPool(option.workers) as pool:
        results = list(tqdm(
            pool.imap(evaluate, cases),
            total=len(cases),
            desc="Certifying",
            disable=not option.interactive_mode
        ))
    frame = pd.DataFrame([row for rows in results for row in rows])

    deficits = _deficits(frame, option)
    violations = {name: int((deficits[name] > 0).sum()) for name in deficits.columns}
    worst_case = None
    if any(violations.values()):
        worst_deficit = deficits.max(axis=1, skipna=True)
        worst_row = int(worst_deficit.idxmax())
        row = frame.loc[worst_row]
        failed_checks = [name for name in deficits.columns if deficits.loc[worst_row, name] > 0]
        worst_case = {
            "row": {key: (None if pd.isna(value) else float(value)) for key, value in row.items()},
            "failed_checks": failed_checks,
            "seed": option.seed,
            "mixture": cases[int(row["case"])].mixture.to_dict()
        }
    report = CertificationReport(frame, _minima(frame, option), violations, worst_case, metadata)
    _print_certify_status(violations, len(frame), option.interactive_mode)
    return report



def certify_stress_ratio(
    count: int = 100000,
    seed: int = 42,
    tolerance: float = 1e-12,
    nu_values: Sequence[float] = NU_GRID
) -> DataFrame:
    """Check the stress-ratio bounds in closed form on random admissible states.

    Draws temperatures and stress eigenvalues with ``sum theta = 3T`` and checks,
    for every nu, ``F_nu <= 3`` when ``nu >= 0``, ``F_nu >= 3`` when ``nu <= 0``,
    ``F_0 = 3`` and the negative-nu ceiling ``F_nu <= 3 / (1 + 2nu)``, all in
    plain arithmetic without a grid.

    Args:
        count (int): Number of random states. Defaults to 100000.
        seed (int): Random seed. Defaults to 42.
        tolerance (float): Allowed violation. Defaults to 1e-12.
        nu_values (Sequence[float]): Values of nu. Defaults to the standard grid.

    Returns:
        :class:`pandas.DataFrame`: One row per nu with the smallest margins, the
            range of ``F_nu`` and a ``violations`` count.
    """
    rng = np.random.default_rng(seed)
    T = rng.uniform(0.1, 10.0, size=count)
    shares = rng.dirichlet(np.ones(3), size=count)
    interior = shares.min(axis=1) > 1e-8
    T, theta = T[interior], 3.0 * T[interior, None] * shares[interior]
    rows = []
    for nu in nu_values:
        F = f_nu_scalar(T, theta, nu)
        if nu > 0:
            margin = 3.0 - F
        elif nu < 0:
            margin = F - 3.0
        else:
            margin = -np.abs(F - 3.0)
        ceiling = 3.0 / (1.0 + 2.0 * nu) - F if nu < 0 else np.zeros_like(F)
        rows.append({
            "nu": float(nu),
            "samples": int(T.size),
            "F_min": float(F.min()) if F.size else np.nan,
            "F_max": float(F.max()) if F.size else np.nan,
            "min_margin": float(margin.min()) if F.size else np.nan,
            "min_ceiling_margin": float(ceiling.min()) if F.size else np.nan,
            "remainder_floor_unit": _remainder_floor(nu, 1.0, 1.0),
            "violations": int(np.count_nonzero(margin < -tolerance) + np.count_nonzero(ceiling < -tolerance))
        })
    return pd.DataFrame(rows)



def certify_linearized(
    grid: VelocityGrid,
    nu_values: Sequence[float] = NU_GRID,
    count: int = 100,
    seed: int = 42,
    tolerance: float = 1e-8,
    interactive_mode: bool = False
) -> DataFrame:
    """Sweep the linearized dissipation identity and block eigenvalues over nu.

    For every nu, evaluates :func:`dirichlet_form` on ``count`` random grid
    functions and :func:`block_eigenvalues`, and records the largest mismatch of
    the identity, of the mirror split and of each block eigenvalue against
    ``0``, ``-1``, ``-1`` and ``-1 / (1 - nu)``.

    Returns:
        :class:`pandas.DataFrame`: One row per nu with the worst errors, the
            smallest dissipation and a ``violations`` count.
    """
    basis = get_basis(grid)
    gram_error = float(np.max(np.abs(basis.gram() - np.eye(10))))
    rows = []
    for nu in tqdm(nu_values, desc="Linearized sweep", disable=not interactive_mode):
        # same random functions for every nu
        rng = np.random.default_rng(seed)
        forms = [dirichlet_form(basis, rng.standard_normal(grid.size), nu) for _ in range(count)]
        eig = block_eigenvalues(basis, nu)
        errors = {
            "gram_error": gram_error,
            "max_mismatch": max((form.mismatch for form in forms), default=0.0),
            "max_split_mismatch": max((form.split_mismatch for form in forms), default=0.0),
            "eig_B0_error": float(np.max(np.abs(eig["B0"]))),
            "eig_B1_error": float(np.max(np.abs(eig["B1"] + 1.0))),
            "eig_B2_error": float(np.max(np.abs(eig["B2"] + 1.0))),
            "eig_complement_error": float(np.max(np.abs(eig["complement"] + 1.0 / (1.0 - nu))))
        }
        row = {"nu": float(nu)}
        row.update(errors)
        row["min_lhs"] = min((form.lhs for form in forms), default=0.0)
        row["min_signed_remainder"] = min((np.sign(nu) * form.remainder for form in forms), default=0.0)
        row["violations"] = int(sum(value > tolerance for value in errors.values()))
        rows.append(row)
    return pd.DataFrame(rows)
