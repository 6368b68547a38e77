import numpy as np
from .utils import KineticError


def _validate_grid_params(n_per_axis: int, v_max: float) -> None:
    """Validate the size parameters of a velocity grid.

    Args:
        n_per_axis (int): Points per axis.
        v_max (float): Half-width of the velocity cube.

    Raises:
        ValueError: If n_per_axis is not an integer >= 2 or v_max is not positive.
    """
    if isinstance(n_per_axis, bool) or not isinstance(n_per_axis, (int, np.integer)):
        raise ValueError(f"n_per_axis must be an integer, got {type(n_per_axis).__name__}.")
    if n_per_axis < 2:
        raise ValueError(f"n_per_axis must be at least 2, got {n_per_axis}.")
    if not np.isfinite(v_max) or v_max <= 0:
        raise ValueError(f"v_max must be a positive real, got {v_max}.")



def _validate_values(values: np.ndarray, size: int, function: str) -> None:
    """Validate the node values of a distribution function.

    Args:
        values (np.ndarray): Flat node values.
        size (int): Expected number of nodes.
        function (str): Calling function, used in the error message.

    Raises:
        KineticError: If the shape is wrong, a value is not finite or a value is negative.
    """
    if values.shape != (size,):
        raise KineticError(
            f"Distribution has {values.size} values but the grid has {size} nodes",
            function=function
        )
    if not np.all(np.isfinite(values)):
        raise KineticError("Distribution contains non-finite values", function=function)
    min_value = float(values.min())
    if min_value < 0:
        raise KineticError(
            "Distribution contains negative values",
            function=function,
            quantity="min value",
            value=min_value
        )



def _validate_same_grid(first, second, function: str) -> None:
    """Ensure two grid-bound objects live on the same velocity grid.

    Raises:
        KineticError: If the grids differ.
    """
    if not first.same_as(second):
        raise KineticError(
            f"Grid mismatch: {first!r} versus {second!r}",
            function=function
        )
