"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class KwayNegError(Exception):
    exit_code = 4


class InputError(KwayNegError, ValueError):
    """Malformed input: bad qubit label, wrong vector length, unparsable number."""

    exit_code = 2


class NormalizationError(KwayNegError, ValueError):
    exit_code = 3


class DomainError(KwayNegError, ValueError):
    """Family parameters outside the feasible region."""

    exit_code = 3


class ContractError(KwayNegError, ValueError):
    """An operator violates a structural precondition (e.g. not Hermitian)."""

    exit_code = 4


class NumericalError(KwayNegError, ArithmeticError):
    exit_code = 4
