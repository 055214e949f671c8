"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class PrecisionError(ArithmeticError):
    """A finite-precision computation could not resolve its result.

    Raised when an elementary divisor reaches ``l**N`` (so it is only known
    modulo the working precision) or when tracked l-adic precision drops
    below what the caller asked for.
    """


class ModelError(ValueError):
    """A Galois-lattice model violates one of its structural invariants."""


class NonUnitError(ArithmeticError):
    """An element that must be invertible is not a unit."""
