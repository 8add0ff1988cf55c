"""Exception hierarchy shared by all modules."""


class FusionCheckError(Exception):
    """Base class for every error raised by fusioncheck."""


# numerics
class KernelError(FusionCheckError):
    pass


class NoKernel(KernelError):
    pass


class AmbiguousKernel(KernelError):
    def __init__(self, message, basis=None):
        super().__init__(message)
        self.basis = basis


class PivotVanishes(KernelError):
    pass


class NonConvergence(FusionCheckError):
    pass


# labels and tables
class UnknownLabel(FusionCheckError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InadmissibleTriple(FusionCheckError, ValueError):
    pass


class ValidationError(FusionCheckError):
    """Model data violates one or more axioms; ``violations`` lists them all."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations) or [message]


class MissingEntry(ValidationError):
    pass


class MissingGaugeEntry(FusionCheckError):
    pass


class MultiplicityUnsupported(ValidationError):
    pass


class ParseError(FusionCheckError):
    pass


class UnknownModel(FusionCheckError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# ribbon structures
class NoConsistentTwist(FusionCheckError):
    pass


class InvalidSeed(FusionCheckError):
    pass


class MultiplicativityViolation(FusionCheckError):
    pass


class DegenerateDimension(FusionCheckError):
    pass


class NoUnitaryRibbon(FusionCheckError):
    pass


class TheoremViolation(FusionCheckError):
    """A unitary model contradicted one of the two structural theorems."""


class MultipleUnitaryRibbons(TheoremViolation):
    pass
