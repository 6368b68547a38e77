from .utils import LOG_FLOOR


class EntropyOption:
    """Options for evaluating entropy functionals.

    Controls how :func:`entropy_production`, :func:`diperna_lions_check` and the
    solver diagnostics treat nodes where the distribution vanishes. By default a
    zero or negative node is a hard error, since test generators (Gaussian
    mixtures) are strictly positive and silently flooring would hide a generator
    fault. Enable ``log_floor`` for solver runs whose far tails underflow.

    Args:
        log_floor (bool): Whether to floor ``f`` at ``floor_value`` inside
            logarithms. Defaults to False.
        floor_value (float): The floor. Defaults to 1e-300.

    Attributes:
        log_floor (bool): Indicates whether flooring is enabled.
        floor_value (float): The floor used inside logarithms.

    Examples:
        >>> from esbgklab import EntropyOption, entropy_production
        >>> option = EntropyOption(log_floor = True)
        >>> report = entropy_production(f, nu = 0.5, A_nu = 6.0, option = option)
    """
    def __init__(self, log_floor: bool = False, floor_value: float = LOG_FLOOR):
        self.log_floor = log_floor
        self.floor_value = floor_value
