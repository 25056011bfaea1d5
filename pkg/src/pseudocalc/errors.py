"""Semantic exception hierarchy shared by every pseudocalc module.

All failures raised by this package derive from :class:`PseudoCalcError`, so
callers (CLI, service) can map the whole family to structured error payloads
without catching ``Exception``.
"""


class PseudoCalcError(Exception):
    """Base class for every pseudocalc failure."""


class ValidationError(PseudoCalcError):
    """A generator definition violates its structural assumptions."""


class DomainError(PseudoCalcError):
    """A raw value lies outside the generator domain beyond tolerance."""


class RangeError(PseudoCalcError):
    """An image value has no representable preimage (or overflowed)."""


class ConvergenceError(PseudoCalcError):
    """The numerical inverse failed to reach its residual target."""


class DivisionByZeroG(PseudoCalcError):
    """Pseudo-division by (a value indistinguishable from) the zero element."""


class LogDomainError(PseudoCalcError):
    """Pseudo-logarithm of a value with vanishing image."""


class NumericError(PseudoCalcError):
    """NaN appeared in an image-space computation."""


class DepthExceeded(PseudoCalcError):
    """Adaptive quadrature hit its recursion cap before converging."""


class NegativeWeight(PseudoCalcError):
    """A weighted-integral weight function is negative on the interval."""


class ParameterError(PseudoCalcError):
    """Operation parameters violate a required relation (exponents, ranges)."""


class UnknownInequality(PseudoCalcError):
    """A suite item references an inequality name that does not exist."""
