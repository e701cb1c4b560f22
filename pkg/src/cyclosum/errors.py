"""Exception hierarchy. Every error carries a readable message naming the
violated precondition; the CLI maps all of them to exit code 2."""


class CyclosumError(ValueError):
    pass


class NotPrime(CyclosumError):
    pass


class CongruenceFailed(CyclosumError):
    pass


class DegenerateField(CyclosumError):
    pass


class CacheMismatch(CyclosumError):
    pass


class ZeroArgument(CyclosumError):
    pass


class NotAUnit(CyclosumError):
    pass


class NotDivisible(CyclosumError):
    pass


class BadOrder(CyclosumError):
    pass


class BadField(CyclosumError):
    pass


class BadN(CyclosumError):
    pass


class BadD(CyclosumError):
    pass


class TheoremViolation(CyclosumError):
    """Raised when low λ-adic digits of J + 1 are nonzero, contradicting
    the classical J ≡ -1 (mod λ^3) floor."""
