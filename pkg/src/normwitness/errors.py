"""Exception hierarchy shared across the library.

MathError covers failures of mathematical preconditions that legal-looking
input can trigger (non-units, zero divisors, exhausted sampling budgets).
InternalInvariant marks states the algorithms promise never to reach;
seeing one is a bug, not a usage error.  ParseError belongs to the CLI's
fixture layer.  The CLI maps the three families to exit codes 3, 4 and 2.
"""


class MathError(Exception):
    """A mathematical precondition failed for the given input."""


class NotAUnit(MathError):
    """A unit was required (invertibility in the ambient ring)."""


class NonUnitInput(MathError):
    """The witness pipeline was fed a value that is not a unit."""


class ZeroDivisor(MathError):
    """Inversion hit a zero divisor of an etale algebra."""


class SamplingExhausted(MathError):
    """The rejection-sampling retry budget ran out."""


class NotPrimitive(MathError):
    """The element's powers do not form a basis."""


class IsotropicMirror(MathError):
    """A reflection mirror must have a unit q-value."""


class UnitConditionViolated(MathError):
    """The lifting lemma's unit condition failed on the given lift."""


class DomainTooLarge(MathError):
    """Exhaustive enumeration would exceed the size guard."""


class NonMonicDivisor(MathError):
    """Polynomial division needs a monic divisor outside fields."""


class UndefinedGcd(MathError):
    """gcd(0, 0) has no monic representative."""


class UndefinedSeparability(MathError):
    """Separability of the zero polynomial is undefined."""


class AlgebraMismatch(MathError):
    """Operands belong to different algebras."""


class RankOneUnsupported(MathError):
    """Quadric sampling needs rank at least 2; rank 1 has a closed form."""


class InternalInvariant(Exception):
    """An internal invariant broke; this is a bug, not bad input."""


class NonzeroRemainder(InternalInvariant):
    """A division that must be exact left a remainder."""


class ParseError(Exception):
    """A fixture or CLI payload is malformed."""
