"""Exception hierarchy shared by all modules.

Every error raised on purpose derives from :class:`GradedCodesError`, so
callers (and the CLI exit-code mapping) can distinguish bad input, blown
budgets, and internal invariant violations.
"""

from __future__ import annotations


class GradedCodesError(Exception):
    """Base class for all library errors."""


# --- field construction / arithmetic ---------------------------------------

class NonPrimeCharacteristic(GradedCodesError):
    pass


class ReducibleModulus(GradedCodesError):
    pass


class UnsupportedOrder(GradedCodesError):
    """Field order outside the supported regime, or no default modulus."""


class DivisionByZero(GradedCodesError):
    pass


class NonSquareOrder(GradedCodesError):
    """Hermitian machinery requires q to be a perfect square."""


# --- geometry / polynomials -------------------------------------------------

class ZeroTuple(GradedCodesError):
    pass


class ZeroPolynomial(GradedCodesError):
    pass


class NonHomogeneous(GradedCodesError):
    pass


class BudgetExceeded(GradedCodesError):
    """An enumeration would exceed the caller's tuple/codeword budget."""


# --- codes -------------------------------------------------------------------

class EmptyPointSet(GradedCodesError):
    pass


class NotSelfOrthogonal(GradedCodesError):
    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness


class ContainmentViolated(GradedCodesError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# --- chain complexes ---------------------------------------------------------

class ShapeMismatch(GradedCodesError):
    pass


class DifferentialSquareNonzero(GradedCodesError):
    def __init__(self, message: str, degree: int | None = None, entry=None):
        super().__init__(message)
        self.degree = degree
        self.entry = entry


class DegreeOutOfRange(GradedCodesError):
    pass


class EmptyFiltration(GradedCodesError):
    pass


# --- bounds -------------------------------------------------------------------

class InvalidStabilizer(GradedCodesError):
    """A census entry listed a stabilizer order below 2."""


class InternalInvariantError(GradedCodesError):
    """A structural identity the library guarantees failed; always a bug."""
