"""Exception hierarchy.

Three families matter to the command line: input problems (exit code 1),
computed negative verdicts (still exit code 0, they are answers), and
assumption violations — evidence that an asserted hypothesis is false or that
two independent routes disagree (exit code 2).
"""


class LndkitError(Exception):
    """Base class for everything raised deliberately by this package."""


class InputError(LndkitError):
    """Bad user input: malformed text, wrong field, invalid manifest."""


class AssumptionViolation(LndkitError):
    """Evidence that an asserted hypothesis does not hold."""


# --- fields ---------------------------------------------------------------

class FieldMismatch(InputError):
    """Operands belong to different field towers."""


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class UnsupportedField(InputError):
    """Operation not defined for this kind of field tower."""


class NameCollision(InputError):
    pass


class NonMonic(InputError):
    """Minimal polynomial must be monic of degree at least 2."""


class ZeroElement(InputError):
    """Operation undefined at zero (degree of 0, inverse of 0, ...)."""


class ReducibleExtension(AssumptionViolation):
    """A zero divisor showed an extension minimal polynomial is reducible."""


# --- polynomials ----------------------------------------------------------

class PolySyntaxError(InputError):
    """Parse failure; carries the 0-based offset into the source text."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class UnknownSymbol(PolySyntaxError):
    pass


class UnknownVariable(InputError):
    pass


class PositiveCharacteristic(UnsupportedField):
    """Raised where the theory genuinely needs characteristic zero."""


# --- groebner engine ------------------------------------------------------

class ResourceExceeded(LndkitError):
    """A step cap was hit before the computation finished."""


class NotAHomomorphism(InputError):
    """Proposed generator images do not respect the source relations."""


class ImproperIdeal(InputError):
    """The unit ideal where a proper one is required."""


# --- derivations ----------------------------------------------------------

class NotWellDefined(InputError):
    """Value map does not descend to the quotient ring."""


class DegBoundExceeded(LndkitError):
    """Iterated application failed to vanish within the bound."""


class NotFound(LndkitError):
    """Bounded search exhausted without a witness."""


# --- embeddings -----------------------------------------------------------

class InvalidPoint(InputError):
    """Coordinates do not satisfy the ring relations."""


class GenericNotInjective(LndkitError):
    """The embedding map is not injective at the generic point."""

    def __init__(self, message, rank=None, required=None):
        super().__init__(message)
        self.rank = rank
        self.required = required


class ReductionFailed(LndkitError):
    """No tried substitution preserved injectivity."""


class OracleDisagreement(AssumptionViolation):
    """Two independent decision routes returned different verdicts."""


class InternalDisagreement(AssumptionViolation):
    """Two internal characterizations of the same fact disagree."""


# --- manifests ------------------------------------------------------------

class ManifestError(InputError):
    """Invalid manifest; carries a dotted location path."""

    def __init__(self, message, location=""):
        self.location = location
        if location:
            message = "%s (at %s)" % (message, location)
        super().__init__(message)
