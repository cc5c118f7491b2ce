"""Exception hierarchy shared across the package."""


class SphereCodesError(Exception):
    """Base class for all package errors."""


class ShapeError(SphereCodesError, ValueError):
    """Operands have mismatched descriptors, dimensions or lengths."""


class DomainError(SphereCodesError, ValueError):
    """Input lies outside the domain of an operation."""


class NumericalError(SphereCodesError, ArithmeticError):
    """A numerical procedure failed to converge or disagreed with its cross-check."""


class InfeasibleError(SphereCodesError):
    """A linear program has no feasible point."""


class InternalError(SphereCodesError, AssertionError):
    """A guaranteed invariant was violated; indicates a bug, not bad input."""


class FormatError(SphereCodesError, ValueError):
    """A serialized document does not match the expected layout.

    ``path`` locates the offending field, for example ``vectors[3].components[0]``.
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
