"""
Exception hierarchy for the walk_centrality application.

Every error carries the process exit code the CLI reports for it:
1 for usage and contract problems, 2 for input problems, 3 for numerical
and capacity failures.
"""

USAGE_EXIT_CODE = 1
INPUT_EXIT_CODE = 2
NUMERICAL_EXIT_CODE = 3


class WalkCentralityError(Exception):
    exit_code = USAGE_EXIT_CODE


class ConfigurationError(WalkCentralityError, ValueError):
    exit_code = USAGE_EXIT_CODE


class ContractViolation(WalkCentralityError):
    exit_code = USAGE_EXIT_CODE


class InputError(WalkCentralityError):
    exit_code = INPUT_EXIT_CODE


class GraphParseError(InputError):
    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class NumericalError(WalkCentralityError):
    exit_code = NUMERICAL_EXIT_CODE


class DivergenceError(NumericalError):
    pass


class CapacityError(NumericalError):
    pass


class UniverseMismatch(InputError, ContractViolation):
    """Two results do not rank the same set of nodes."""
