"""Exception types shared across the package."""


class TiltError(Exception):
    """Base class for all package errors."""


class InputError(TiltError):
    pass


class EmptyPolyomino(InputError):
    pass


class DisconnectedPolyomino(InputError):
    pass


class IllegalCharacter(InputError):
    def __init__(self, row, col, ch):
        super().__init__(f"illegal character {ch!r} at row {row}, column {col}")
        self.row = row
        self.col = col


class PixelOutsidePolyomino(TiltError):
    def __init__(self, p):
        super().__init__(f"pixel {p} is not inside the polyomino")
        self.pixel = p


class ConfigurationNotInPolyomino(TiltError):
    pass


class BudgetExceeded(TiltError):
    def __init__(self, what, limit):
        super().__init__(f"{what} exceeded budget {limit}")
        self.limit = limit


class InvalidTallyShape(TiltError):
    pass


class InvalidAlphabet(TiltError):
    pass


class NotASimpleMaze(TiltError):
    pass


class NotGatherable(TiltError):
    pass


class NotARectangle(TiltError):
    pass


class CardinalityMismatch(TiltError):
    pass


class NotRepresentativeClosed(TiltError):
    pass


class NotOddPrime(TiltError):
    pass


class EmptyWordList(TiltError):
    pass


class VerificationFailed(TiltError):
    """A generator's self-check found a violated invariant."""

    def __init__(self, invariant, detail=""):
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)
        self.invariant = invariant
