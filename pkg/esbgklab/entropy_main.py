from dataclasses import dataclass, field, asdict
from typing import Dict, Optional, Union
import numpy as np
from scipy import special
from .utils import KineticError
from .grid_main import DistributionFunction
from .grid_validate import _validate_same_grid
from .moment_main import extract_moments
from .gaussian_main import (
    ellipsoidal_gaussian, local_maxwellian, multivariate_gaussian, gaussian_entropy_closed_form
)
from .gaussian_process import _quadratic_form
from .gaussian_validate import _validate_nu
from .entropy_option import EntropyOption
from .entropy_validate import (
    _validate_strictly_positive, _validate_rate, _validate_truncation, _validate_stress_eigenvalues
)
from .entropy_process import _log_values, _stress_ratio, _build_margins, _scaled_error


@dataclass
class EntropyReport:
    """Entropy functionals and inequality margins of one distribution.

    The entropy production is computed directly, ``D_nu = -A sum w (M_nu - f) ln f``,
    and reconstructed from its parts as
    ``E_part + R_nu / 2 - A ln(norm) sum w (M_nu - f)``, where ``ln(norm)`` is the
    log normalization of ``M_nu``. ``R_nu`` is the quadrature of
    ``A (M_nu - f) (v-U)^T T_nu^{-1} (v-U)`` and ``R_nu_closed`` its closed form
    ``A rho (3 - F_nu)``.

    Attributes:
        nu (float): Ellipsoidal parameter.
        A_nu (float): Relaxation rate.
        rho (float): Discrete mass of ``f``.
        T (float): Discrete temperature of ``f``.
        H_f (float): ``sum w f ln f``.
        H_M0 (float): Closed-form entropy of the local Maxwellian.
        H_M1 (Optional[float]): Closed-form entropy of the multivariate Gaussian,
            None for boundary states.
        H_Mnu (float): Closed-form entropy of the ellipsoidal Gaussian.
        rel_entropy (float): ``H(f | M_0)``.
        D_nu (float): Entropy production.
        D_reconstructed (float): Entropy production rebuilt from its parts.
        E_part (float): ``A sum w (M_nu - f)(ln M_nu - ln f)``, nonnegative.
        R_nu (float): Remainder by quadrature.
        R_nu_closed (float): Remainder in closed form.
        F_nu (float): Stress ratio.
        mass_defect (float): ``sum w (M_nu - f)``, zero up to quadrature error.
        l1_to_maxwellian (float): ``sum w |f - M_0|``.
        margins (Dict[str, Optional[float]]): Inequality slacks, nonnegative when
            the inequality holds.
        errors (Dict[str, float]): Scaled consistency errors of the remainder and
            of the production split.
    """
    nu: float
    A_nu: float
    rho: float
    T: float
    H_f: float
    H_M0: float
    H_M1: Optional[float]
    H_Mnu: float
    rel_entropy: float
    D_nu: float
    D_reconstructed: float
    E_part: float
    R_nu: float
    R_nu_closed: float
    F_nu: float
    mass_defect: float
    l1_to_maxwellian: float
    margins: Dict[str, Optional[float]] = field(default_factory=dict)
    errors: Dict[str, float] = field(default_factory=dict)


    def to_dict(self) -> Dict[str, object]:
        return asdict(self)



@dataclass
class TruncationReport:
    """Pointwise and integrated checks of the truncation split of ``M_nu - f``.

    At every node ``M - f <= (R-1) f`` on ``{M < R f}`` and
    ``M - f <= (M - f)(ln M - ln f) / ln R`` on ``{M >= R f}``.

    Attributes:
        R_trunc (float): Truncation level.
        max_violation (float): Largest ``(lhs - rhs) / (M + f)`` over the nodes,
            nonpositive up to rounding.
        violating_nodes (int): Nodes with a violation beyond 1e-12.
        mass_term (float): ``(R-1) sum_{M < R f} w f``.
        entropy_term (float): ``sum_{M >= R f} w E(M, f) / ln R``.
        gaussian_mass (float): ``sum w M``.
        split_slack (float): ``mass_term + entropy_term - sum w (M - f)``.
        integrated_slack (float): ``R sum w f + sum w E(M, f) / ln R - sum w M``.
    """
    R_trunc: float
    max_violation: float
    violating_nodes: int
    mass_term: float
    entropy_term: float
    gaussian_mass: float
    split_slack: float
    integrated_slack: float



def h_functional(f: DistributionFunction) -> float:
    """The H-functional ``sum w f ln f`` with ``0 ln 0 = 0``.

    Examples:
        >>> from esbgklab import build_grid, DistributionFunction, h_functional
        >>> h_functional(DistributionFunction(build_grid(2, 1.0), np.ones(8)))
        0.0
    """
    return float(f.grid.weight * np.sum(special.xlogy(f.values, f.values)))



def relative_entropy(f: DistributionFunction, g: DistributionFunction) -> float:
    """Relative entropy ``H(f | g) = sum w f ln(f / g)``.

    Nonnegative up to quadrature noise when the masses agree.

    Raises:
        :class:`KineticError`: If the grids differ or ``g`` vanishes where ``f`` does not.
    """
    _validate_same_grid(f.grid, g.grid, "relative_entropy")
    support = (f.values > 0) & (g.values <= 0)
    if np.any(support):
        raise KineticError(
            f"Support violation at {int(support.sum())} nodes: f > 0 where g = 0",
            function="relative_entropy"
        )
    return float(f.grid.weight * np.sum(special.rel_entr(f.values, g.values)))



def kullback_margin(f: DistributionFunction, g: DistributionFunction) -> float:
    """Slack of the Kullback inequality ``||f - g||_1 <= sqrt(2 rho H(f | g))``.

    ``rho`` is the common mass; the inequality reduces to the unit-mass form at
    ``rho = 1``.

    Returns:
        float: ``sqrt(2 rho H(f | g)) - ||f - g||_1``, nonnegative when it holds.

    Raises:
        :class:`ValueError`: If the masses differ by more than 1e-8 relative.
    """
    rho_f, rho_g = f.mass(), g.mass()
    if abs(rho_f - rho_g) > 1e-8 * rho_f:
        raise ValueError(f"Kullback inequality needs equal masses, got {rho_f} and {rho_g}.")
    H = max(relative_entropy(f, g), 0.0)
    l1 = float(f.grid.weight * np.sum(np.abs(f.values - g.values)))
    return float(np.sqrt(2.0 * rho_f * H)) - l1



def f_nu_scalar(
    T: Union[float, np.ndarray],
    theta: np.ndarray,
    nu: float
) -> Union[float, np.ndarray]:
    """Stress ratio ``F_nu = sum_i theta_i / ((1-nu) T + nu theta_i)``.

    Vectorized: ``T`` may be an array of shape (m,) with ``theta`` of shape (m, 3).
    ``F_0 = 3``; ``F_nu <= 3`` for ``nu >= 0`` and ``F_nu >= 3`` for ``nu <= 0``.

    Args:
        T (float or np.ndarray): Temperature(s), positive.
        theta (np.ndarray): Stress eigenvalues with ``sum theta = 3 T``.
        nu (float): Ellipsoidal parameter in (-1/2, 1).

    Returns:
        float or np.ndarray: The stress ratio.

    Raises:
        :class:`ValueError`: If nu is outside (-1/2, 1) or T is not positive.
        :class:`KineticError`: If the trace constraint fails or a theta_i is not
            positive (boundary state).

    Examples:
        >>> round(f_nu_scalar(1.0, [1.5, 1.0, 0.5], 0.9), 4)
        2.9436
    """
    _validate_nu(nu)
    T_arr = np.asarray(T, dtype=float)
    theta_arr = np.asarray(theta, dtype=float)
    if np.any(~(T_arr > 0)):
        raise ValueError("T must be positive.")
    _validate_stress_eigenvalues(T_arr, theta_arr, "f_nu_scalar")
    result = _stress_ratio(T_arr, theta_arr, nu, "f_nu_scalar")
    return float(result) if np.ndim(result) == 0 else result



def entropy_production(
    f: DistributionFunction,
    nu: float,
    A_nu: float,
    option: Optional[EntropyOption] = None
) -> EntropyReport:
    """Entropy production of the ES-BGK operator with its full decomposition.

    Uses the discrete moments of ``f`` to build ``M_nu``; ``ln M_nu`` is evaluated
    analytically. Fills every field of :class:`EntropyReport`, including the
    production bound ``D_nu >= min{1+2nu, 1-nu} A H(f | M_0)``, the convexity
    step, the Gaussian entropy gap bound, the chain ``H(M_0) <= H(M_1) <= H(f)``,
    the stress-ratio bounds, the remainder sign ``nu R_nu >= 0`` and the
    negative-nu remainder floor.

    Args:
        f (DistributionFunction): The distribution, strictly positive unless
            ``option.log_floor`` is set.
        nu (float): Ellipsoidal parameter in (-1/2, 1).
        A_nu (float): Relaxation rate, nonnegative.
        option (Optional[EntropyOption]): Floor policy. Defaults to
            :class:`EntropyOption`.

    Returns:
        :class:`EntropyReport`: Functionals, margins and consistency errors.

    Raises:
        :class:`ValueError`: If nu or A_nu is out of range.
        :class:`KineticError`: If ``f`` has zero nodes without a floor or its moments
            are not realizable.

    Examples:
        >>> report = entropy_production(f, nu = 0.5, A_nu = 1.0)
        >>> report.margins["production_bound"] >= 0
        True
    """
    option = option or EntropyOption()
    _validate_nu(nu)
    _validate_rate(A_nu)
    grid = f.grid
    w = grid.weight
    v = grid.velocities
    values = f.values
    _validate_strictly_positive(values, option, "entropy_production")

    state = extract_moments(f)
    m_nu = ellipsoidal_gaussian(state, nu)
    m_0 = local_maxwellian(state)
    log_f = _log_values(values, option)
    log_M = m_nu.log_density(v)
    M = np.exp(log_M)
    diff = M - values

    D_nu = -A_nu * w * float(diff @ log_f)
    E_part = A_nu * w * float(diff @ (log_M - log_f))
    q = _quadratic_form(v, state.U, m_nu.Tnu.P, m_nu.Tnu.eigenvalues)
    R_nu = A_nu * w * float(diff @ q)
    F_nu = float(_stress_ratio(state.T, m_nu.Tnu.theta, nu, "entropy_production"))
    R_nu_closed = A_nu * state.rho * (3.0 - F_nu)
    mass_defect = w * float(diff.sum())
    D_reconstructed = E_part + 0.5 * R_nu - A_nu * m_nu.log_norm * mass_defect

    H_f = float(w * np.sum(special.xlogy(values, values)))
    log_M0 = m_0.log_density(v)
    rel_entropy = w * float(values @ (log_f - log_M0))
    l1 = w * float(np.sum(np.abs(values - np.exp(log_M0))))
    H_M0 = gaussian_entropy_closed_form(m_0)
    H_Mnu = gaussian_entropy_closed_form(m_nu)
    try:
        H_M1 = gaussian_entropy_closed_form(multivariate_gaussian(state))
    except KineticError:
        H_M1 = None
    gap = 0.5 * state.rho * float(np.sum(np.log(m_nu.Tnu.eigenvalues / state.T)))
    gap_bound = None if H_M1 is None else max(nu, -2.0 * nu) * (H_M0 - H_M1)
    convexity_rhs = A_nu * (H_f - w * float(M @ log_M) + mass_defect)

    scale = max(1e-3 * A_nu * state.rho, np.finfo(float).tiny)
    margins = _build_margins(
        nu, A_nu, state.rho, D_nu, rel_entropy, convexity_rhs,
        H_f, H_M0, H_M1, gap, gap_bound, F_nu, R_nu_closed
    )
    errors = {
        "remainder_consistency": _scaled_error(R_nu, R_nu_closed, max(abs(R_nu_closed), scale)),
        "split_consistency": _scaled_error(D_nu, D_reconstructed, max(abs(D_nu), scale))
    }
    return EntropyReport(
        nu=float(nu),
        A_nu=float(A_nu),
        rho=state.rho,
        T=state.T,
        H_f=H_f,
        H_M0=H_M0,
        H_M1=H_M1,
        H_Mnu=H_Mnu,
        rel_entropy=rel_entropy,
        D_nu=D_nu,
        D_reconstructed=D_reconstructed,
        E_part=E_part,
        R_nu=R_nu,
        R_nu_closed=R_nu_closed,
        F_nu=F_nu,
        mass_defect=mass_defect,
        l1_to_maxwellian=l1,
        margins=margins,
        errors=errors
    )



def diperna_lions_check(
    f: DistributionFunction,
    nu: float,
    R_trunc: float,
    option: Optional[EntropyOption] = None
) -> TruncationReport:
    """Check the truncation split behind the weak compactness of ``M_nu(f)``.

    Splits the nodes into ``{M_nu < R f}`` and ``{M_nu >= R f}`` and verifies the
    pointwise bound ``M_nu - f <= (R-1) f 1_{M < Rf} + (M_nu - f)(ln M_nu - ln f) / ln R 1_{M >= Rf}``
    at every node, then reports the two right-hand terms of its integrated form.

    Args:
        f (DistributionFunction): The distribution, strictly positive.
        nu (float): Ellipsoidal parameter in (-1/2, 1).
        R_trunc (float): Truncation level, larger than 1.
        option (Optional[EntropyOption]): Floor policy. Defaults to
            :class:`EntropyOption`.

    Returns:
        :class:`TruncationReport`: Pointwise violation and integrated terms.

    Raises:
        :class:`ValueError`: If ``R_trunc <= 1`` or nu is out of range.
    """
    option = option or EntropyOption()
    _validate_truncation(R_trunc)
    _validate_nu(nu)
    grid = f.grid
    w = grid.weight
    values = f.values
    _validate_strictly_positive(values, option, "diperna_lions_check")

    m_nu = ellipsoidal_gaussian(extract_moments(f), nu)
    log_M = m_nu.log_density(grid.velocities)
    M = np.exp(log_M)
    log_f = _log_values(values, option)
    E = (M - values) * (log_M - log_f)
    log_R = float(np.log(R_trunc))
    below = M < R_trunc * values
    rhs = np.where(below, (R_trunc - 1.0) * values, E / log_R)
    violation = (M - values - rhs) / (M + values)
    mass_term = (R_trunc - 1.0) * w * float(values[below].sum())
    entropy_term = w * float(E[~below].sum()) / log_R
    gaussian_mass = w * float(M.sum())
    f_mass = w * float(values.sum())
    return TruncationReport(
        R_trunc=float(R_trunc),
        max_violation=float(violation.max()),
        violating_nodes=int(np.count_nonzero(violation > 1e-12)),
        mass_term=mass_term,
        entropy_term=entropy_term,
        gaussian_mass=gaussian_mass,
        split_slack=mass_term + entropy_term - (gaussian_mass - f_mass),
        integrated_slack=R_trunc * f_mass + w * float(E.sum()) / log_R - gaussian_mass
    )
