import pytest
from esbgklab.utils import KineticError, NU_GRID


def test_kinetic_error_message():
    """Test KineticError joins the function, quantity and value into its message."""
    error = KineticError("Temperature tensor is not positive definite", function="temperature_tensor",
                         quantity="min eigenvalue", value=-0.25)
    assert str(error) == (
        "Temperature tensor is not positive definite - Function: temperature_tensor - "
        "Quantity: min eigenvalue - Value: -0.25. Check the input state or refine the velocity grid."
    )
    assert error.message == "Temperature tensor is not positive definite"
    assert error.value == -0.25


def test_kinetic_error_message_only():
    """Test KineticError without context keeps only the message."""
    with pytest.raises(KineticError) as excinfo:
        raise KineticError("Distribution has no mass")
    assert str(excinfo.value) == "Distribution has no mass. Check the input state or refine the velocity grid."
    assert excinfo.value.function is None


def test_nu_grid():
    """Test the standard nu grid is sorted, excludes the endpoints and contains 0."""
    assert list(NU_GRID) == sorted(NU_GRID)
    assert 0.0 in NU_GRID
    assert all(-0.5 < nu < 1.0 for nu in NU_GRID)
