"""Exception types shared across the package."""


class LocalZetaError(Exception):
    """Base class for every domain error raised by this package."""


class InvalidPrime(LocalZetaError):
    """The modulus handed to a p-adic context is not prime."""


class NotInvertible(LocalZetaError):
    """Modular inverse requested for a residue divisible by p."""


class NegativeValuation(LocalZetaError):
    """p-adic digit expansion requested for a rational with p in its denominator."""


class ParseError(LocalZetaError):
    """Polynomial text does not conform to the input grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ZeroPolynomial(LocalZetaError):
    """The zero polynomial has no factorization."""


class ConstantPolynomial(LocalZetaError):
    """A nonzero constant has no roots to factor."""


class SplittingFieldNotQ(LocalZetaError):
    """A nonconstant factor without rational roots remains."""


class CandidateOverflow(LocalZetaError):
    """Root-candidate enumeration exceeded the configured budget."""


class RecursionDepthExceeded(LocalZetaError):
    """The residue-class recursion ran deeper than the separation depth allows."""


class NegativeShift(LocalZetaError):
    """Series coefficients requested for a function with a negative t-shift."""


class NonIntegralCount(LocalZetaError):
    """A solution count came out non-integral or negative (upstream bug)."""


class NonIntegerCoefficients(LocalZetaError):
    """Brute-force counting needs integer coefficients."""


class CapExceeded(LocalZetaError):
    """Brute-force enumeration would exceed the configured residue cap."""


class IntegralityError(LocalZetaError):
    """Solution counts are defined only for polynomials with integer coefficients."""


class PoleAtPoint(LocalZetaError):
    """Rational function evaluated (or expanded) at a pole."""


class DegenerateTaps(LocalZetaError):
    """The highest register tap is zero, so no rational-function correspondence."""


class DegreeViolation(LocalZetaError):
    """Rational function outside the deg(numerator) < deg(denominator) regime."""
