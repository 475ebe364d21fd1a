from typing import Optional, Tuple


class DissectaError(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class ParseError(DissectaError):
    pass


class InvalidArgumentError(DissectaError):
    pass


class InvariantViolationError(DissectaError):
    """An internal postcondition failed. Seeing this is always a bug."""


class TooLargeError(DissectaError):
    pass


# posets


class CycleDetectedError(DissectaError):
    pass


class RelationNotTransitiveError(DissectaError):
    pass


class DuplicateElementError(DissectaError):
    pass


class UnknownElementError(DissectaError):
    def __init__(self, element: str, suggestion: Optional[str] = None) -> None:
        message = f"{element!r} is not an element of the poset."
        if suggestion is not None:
            message += f" Did you mean: {suggestion}"
        super().__init__(message)
        self.element = element
        self.suggestion = suggestion


class NotComparableError(DissectaError):
    pass


class HostMismatchError(DissectaError):
    pass


class MissingValueError(DissectaError):
    pass


class NoBottomError(DissectaError):
    pass


class BottomNotInSubsetError(DissectaError):
    pass


# lattices


class NotALatticeError(DissectaError):
    def __init__(self, message: str, witness: Tuple[str, str]) -> None:
        super().__init__(message)
        self.witness = witness


class NonUniqueCoverError(DissectaError):
    pass


class NotDistributiveError(DissectaError):
    pass


# integer linear algebra and valuations


class DimensionMismatchError(DissectaError):
    pass


class JiNotContainedError(DissectaError):
    pass


class NotAValuationError(DissectaError):
    def __init__(self, message: str, witness: Optional[Tuple[str, str]] = None) -> None:
        super().__init__(message)
        self.witness = witness


# arrangements


class NoUniqueTopError(DissectaError):
    pass


class MissingChiError(DissectaError):
    pass


class DimNotMonotoneError(DissectaError):
    pass


class ZeroChamberChiError(DissectaError):
    pass


class UnknownFlatError(UnknownElementError):
    pass


class MissingDimError(DissectaError):
    pass


class ProfileMismatchError(DissectaError):
    pass


class InvalidRefinementError(DissectaError):
    pass


class ChambersNotPartitionError(DissectaError):
    pass


class IdentityFailedError(DissectaError):
    """A checked identity does not hold. `details` is whatever was computed."""

    def __init__(self, message: str, details: Optional[object] = None) -> None:
        super().__init__(message)
        self.details = details
