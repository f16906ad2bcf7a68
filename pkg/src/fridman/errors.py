"""Exception hierarchy shared by all modules."""


class FridmanError(Exception):
    pass


class OutOfDomain(FridmanError, ValueError):
    """A point lies outside (or numerically on the edge of) the model domain."""


class InvalidArgument(FridmanError, ValueError):
    pass


class NonConvergent(FridmanError, ArithmeticError):
    """An infinite product did not settle within the term budget."""


class InvalidFactor(FridmanError, ArithmeticError):
    pass


class PoleHit(FridmanError, ArithmeticError):
    pass


class ModelMismatch(FridmanError, ValueError):
    pass


class EllipticUnsupported(FridmanError, ValueError):
    pass


class NumericalConsistencyError(FridmanError, ArithmeticError):
    """A quantity that must be real came out with a non-negligible imaginary part."""


class EmptyGroup(FridmanError, ValueError):
    pass


class UnsupportedDomain(FridmanError, ValueError):
    """No closed form is available for the requested invariant on this domain."""
