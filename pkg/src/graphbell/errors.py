"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: validation problems (bad input, bad
arguments, contract violations) exit with 2, capacity problems (instance
too large for the requested method) exit with 3.
"""


class GraphBellError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GraphBellError):
    """Invalid input data or arguments (CLI exit code 2)."""


class DimensionError(ValidationError):
    """Operands act on different numbers of qubits."""


class PauliParseError(ValidationError):
    """A Pauli text string could not be parsed."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ContractError(ValidationError):
    """An operation was called outside its contract (e.g. non-Hermitian input)."""


class NumericalError(GraphBellError):
    """A numerical residue exceeded its tolerance."""


class CapacityError(GraphBellError):
    """Instance exceeds a hard size guard (CLI exit code 3)."""
