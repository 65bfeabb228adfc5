"""Exception hierarchy shared by every module of the package."""


class BeerPathError(ValueError):
    """Base class for all errors raised by :mod:`beerpath`."""


class InvalidGraphError(BeerPathError):
    """The graph violates an outerplanar beer graph invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid graph")


class TooSmallError(BeerPathError):
    pass


class NotAnEdgeError(BeerPathError):
    pass


class UnreachableError(BeerPathError):
    """No beer path exists between the requested vertices."""


class DimensionMismatchError(BeerPathError):
    pass


class MalformedTreeError(BeerPathError):
    pass


class EqualNodesError(BeerPathError):
    pass


class ColourMismatchError(BeerPathError):
    pass


class NotOnChainError(BeerPathError):
    pass


class NotInFanError(BeerPathError):
    pass


class IncompatibleFacesError(BeerPathError):
    """Two face-pair summaries cannot be combined (the semigroup's bottom)."""


class SameFanError(BeerPathError):
    pass


class UnknownFixtureError(BeerPathError, KeyError):
    pass


class GraphFormatError(BeerPathError):
    pass
