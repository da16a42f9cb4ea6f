"""Exception hierarchy mapped onto stable CLI exit codes.

Exit statuses: 0 success, 1 property failure, 2 input/schema error,
3 numerical-conditioning error.
"""

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_CONDITIONING_ERROR = 3


class GoldmanError(Exception):
    """Base class for all package errors."""

    exit_code = EXIT_CONDITIONING_ERROR


class InputError(GoldmanError):
    """Invalid argument, malformed file, or schema/base mismatch."""

    exit_code = EXIT_INPUT_ERROR


class ConditioningError(GoldmanError):
    """A rank or stability decision could not be made reliably."""

    exit_code = EXIT_CONDITIONING_ERROR


class ConvergenceError(ConditioningError):
    """An iterative solve did not reach its target tolerance."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class DegenerateFormError(ConditioningError):
    """A skew form required to be nondegenerate has a null vector."""

    def __init__(self, message, null_vector=None):
        super().__init__(message)
        self.null_vector = null_vector
