"""Exception types shared across the package."""


class ResofitError(Exception):
    """Base class for every error this package raises deliberately."""


class NonFinite(ResofitError):
    """Input contains NaN or infinite entries."""


class NotHermitian(ResofitError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class DimMismatch(ResofitError):
    """Operands have incompatible shapes."""


class Singular(ResofitError):
    """Linear system is numerically singular."""


class RankDeficient(ResofitError):
    """Matrix does not have full column rank."""


class NonGeneric(ResofitError):
    """Total-least-squares problem has no unique, representable solution."""


class GenericityViolated(NonGeneric):
    """Smallest singular value of the augmented matrix is not separated."""

    def __init__(self, margin, message=None):
        self.margin = float(margin)
        super().__init__(message or f"genericity margin {self.margin:.6g} too small")


class NotNormalized(ResofitError):
    """State vector norm deviates from one."""


class ZeroVector(ResofitError):
    """Operation undefined for a zero vector."""


class ZeroProbability(ResofitError):
    """Conditioning on a measurement outcome of numerically zero probability."""


class InsufficientSamples(ResofitError):
    """Signal too short for the requested prediction system."""
