"""Exception hierarchy shared by the numerical modules and the CLI."""


class PSTError(Exception):
    """Base class for every error raised by this package."""


class InputError(PSTError, ValueError):
    """Malformed graph, potential, vertex or parameter."""


class ParityError(InputError):
    pass


class DomainError(InputError):
    pass


class TimeMismatchError(InputError):
    pass


class SpectralError(PSTError, ArithmeticError):
    pass


class DegeneracyError(SpectralError):
    """An operation needed a simple eigenvalue and got a degenerate one."""


class DegenerateScaleError(SpectralError):
    pass


class NotGoodPotentialError(SpectralError):
    """No eigenvector matches the antisymmetric twin mode 1_u - 1_v."""


class InitializationError(PSTError, RuntimeError):
    pass


class NewtonError(PSTError, RuntimeError):
    pass


class JacobianSingularError(NewtonError):
    pass


class NoConvergenceError(NewtonError):
    pass


class SimplicityLostError(NewtonError):
    pass


class SynthesisFailure(PSTError, RuntimeError):
    """Every seed failed; ``attempts`` holds one diagnostic dict per seed."""

    def __init__(self, message: str, attempts: list[dict] | None = None):
        super().__init__(message)
        self.attempts = attempts or []


class FactorFailureError(PSTError, RuntimeError):
    pass


class ContractViolation(PSTError, AssertionError):
    """A numerical result contradicts a proven statement the code relies on."""
