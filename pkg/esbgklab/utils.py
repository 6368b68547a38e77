from typing import Optional, Tuple


EPS_PD = 1e-10
LOG_FLOOR = 1e-300
BOUNDARY_EPS = 1e-10
NU_GRID: Tuple[float, ...] = (-0.45, -0.4, -0.25, -0.1, 0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95)


class KineticError(Exception):
    """Base exception for numerical failures in esbgklab.

    Raised when a distribution or macroscopic state cannot be processed, such as
    a zero-mass distribution, a non-positive temperature, an indefinite temperature
    tensor, a boundary stress tensor or a conservation fit that fails to converge.
    Carries the function, the offending quantity and its value to aid debugging.
    Invalid arguments and configuration raise :class:`ValueError` instead.

    Args:
        message (str): The primary error message describing the issue.
        function (Optional[str]): Name of the function where the error occurred
            (e.g., 'extract_moments'). Defaults to None.
        quantity (Optional[str]): Name of the offending quantity (e.g., 'T',
            'min eigenvalue'). Defaults to None.
        value (Optional[float]): Value of the offending quantity. Defaults to None.

    Attributes:
        message (str): The primary error message.
        function (Optional[str]): The function where the error occurred.
        quantity (Optional[str]): The offending quantity.
        value (Optional[float]): The offending value.

    Examples:
        >>> try:
        ...     raise KineticError(
        ...         message="Temperature tensor is not positive definite",
        ...         function="temperature_tensor",
        ...         quantity="min eigenvalue",
        ...         value=-0.25
        ...     )
        ... except KineticError as e:
        ...     print(str(e))
        Temperature tensor is not positive definite - Function: temperature_tensor - Quantity: min eigenvalue - Value: -0.25. Check the input state or refine the velocity grid.
    """
    def __init__(
        self,
        message: str,
        function: Optional[str] = None,
        quantity: Optional[str] = None,
        value: Optional[float] = None
    ):
        self.message = message
        self.function = function
        self.quantity = quantity
        self.value = value
        error_parts = [message]
        if function:
            error_parts.append(f"Function: {function}")
        if quantity:
            error_parts.append(f"Quantity: {quantity}")
        if value is not None:
            error_parts.append(f"Value: {value:.6g}")
        full_message = " - ".join(error_parts) + ". Check the input state or refine the velocity grid."
        super().__init__(full_message)
