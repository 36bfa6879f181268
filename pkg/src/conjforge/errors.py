"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ConjforgeError(Exception):
    exit_code = 1


class InputError(ConjforgeError, ValueError):
    """A precondition on the arguments does not hold."""

    exit_code = 2


class InvariantViolation(ConjforgeError):
    """A structure, map or registry breaks one of its stated invariants."""

    exit_code = 3


class BudgetExceeded(ConjforgeError, RuntimeError):
    """An iteration or sampling budget ran out."""

    exit_code = 4
