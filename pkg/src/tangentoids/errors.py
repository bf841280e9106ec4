"""Exception hierarchy shared by every layer of the package."""


class TangentoidError(Exception):
    """Base class for all library errors."""


class MixedRings(TangentoidError):
    pass


class NotProduct(TangentoidError):
    pass


class UnsupportedRing(TangentoidError):
    pass


class ShapeMismatch(TangentoidError):
    pass


class NotWellDefined(TangentoidError):
    """A matrix does not respect the relations of its source module."""


class NonUnital(TangentoidError):
    pass


class InfiniteEnumeration(TangentoidError):
    """Raised instead of sampling when a hom-set or module is infinite."""


class BudgetExceeded(TangentoidError):
    pass


class AmbientMismatch(TangentoidError):
    pass


class InvalidWitness(TangentoidError):
    pass


class ExtractionFailure(TangentoidError):
    """A splitting or factorisation that must exist could not be certified."""


class NotCoexponentiable(TangentoidError):
    pass


class DocumentError(TangentoidError):
    """Malformed or unresolvable input document."""
