"""Exception hierarchy.

Every domain failure derives from :class:`LatticeError` (itself a
``ValueError``), which lets the CLI map all of them to exit code 1.
"""


class LatticeError(ValueError):
    pass


class NegativeEntryError(LatticeError):
    pass


class SumNotOneError(LatticeError):
    pass


class DimensionMismatchError(LatticeError):
    pass


class EmptySetError(LatticeError):
    pass


class ShrinkNotAllowedError(LatticeError):
    pass


class NotNormalizedError(LatticeError):
    pass


class UnsupportedTargetError(LatticeError):
    """Target has more nonzero components than the source."""


class LadderMismatchError(LatticeError):
    pass


class DeterministicLadderError(LatticeError):
    pass


class EntryExceedsOneError(LatticeError):
    pass


class DeterministicNoResidualError(LatticeError):
    pass


class ZeroProbabilityError(LatticeError):
    pass


class WeightsInvalidError(LatticeError):
    pass


class InvalidDensityMatrixError(LatticeError):
    pass


class BlockNotPureError(LatticeError):
    pass


class DimensionTooLargeError(LatticeError):
    pass


class DeterministicInstanceError(LatticeError):
    pass


class ConsistencyError(LatticeError):
    """An identity that must hold by construction was violated."""
