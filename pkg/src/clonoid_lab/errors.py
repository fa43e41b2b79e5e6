"""Exception hierarchy.  Every error carries a short machine-readable ``code``."""


class ClonoidLabError(Exception):
    code = "error"


class SpecError(ClonoidLabError):
    code = "malformed-spec"


class SizeLimitExceeded(ClonoidLabError):
    code = "size-limit"


class SearchTooLarge(SizeLimitExceeded):
    code = "search-too-large"


class AxiomViolation(ClonoidLabError):
    code = "axiom-violation"


class NotNilpotent(ClonoidLabError):
    code = "not-nilpotent"


class Unsupported(ClonoidLabError):
    code = "unsupported"


class HypothesisViolated(ClonoidLabError):
    code = "hypothesis-violated"


class SignatureMismatch(ClonoidLabError):
    code = "signature-mismatch"


class DimensionMismatch(SignatureMismatch):
    code = "dimension-mismatch"


class CoprimalityError(ClonoidLabError):
    """An averaging step needs an order that is not invertible modulo the exponent."""

    code = "gcd-violation"


class EvenExponent(CoprimalityError):
    code = "even-exponent"


class NoCommonPrime(ClonoidLabError):
    code = "no-common-prime"


class RadicalZero(ClonoidLabError):
    code = "radical-zero"
