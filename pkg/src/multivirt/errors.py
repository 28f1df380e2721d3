"""Exception hierarchy shared by the whole package."""


class MultivirtError(Exception):
    """Base class for every domain error raised by multivirt."""


class ParseError(MultivirtError):
    """The VGC text does not match the grammar."""


class ValidationError(MultivirtError):
    """Structurally invalid diagram (wrong passage multiplicity, roles, or signs)."""


class UnknownCrossing(MultivirtError):
    """Crossing id not present in the diagram."""


class NotReal(MultivirtError):
    """Operation requires a real (over/under) crossing."""


class MixedCrossing(MultivirtError):
    """The over and under passages lie on different circles, so no over-to-under
    path exists along a single component."""


class NotAKnot(MultivirtError):
    """Operation requires a one-component diagram."""


class BadComponent(MultivirtError):
    """Component index out of range."""


class BadR(MultivirtError):
    """Multiplicity / covering order out of range."""


class BadModulus(MultivirtError):
    """Coloring modulus must be >= 1."""


class TooLarge(MultivirtError):
    """Brute-force search space exceeds the configured limit."""


class MissingProvenance(MultivirtError):
    """Constrained coloring systems need the multiplexing provenance."""


class InvalidColoring(MultivirtError):
    """The supplied assignment does not satisfy its relation system."""


class StaleSite(MultivirtError):
    """A move site no longer matches the diagram it was found on."""
