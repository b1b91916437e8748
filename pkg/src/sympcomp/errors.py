"""Exception hierarchy shared by every module."""


class SympCompError(Exception):
    """Base class for all library errors."""


class RingError(SympCompError):
    pass


class InvalidRing(RingError):
    pass


class RingMismatch(RingError):
    pass


class UnsupportedRing(RingError):
    pass


class UnsupportedCoefficients(RingError):
    pass


class UndecidableHere(RingError):
    """No decision procedure is implemented for this ring."""


class NotUnimodular(RingError):
    """Proof-backed verdict that a row does not generate the unit ideal."""


class NotAUnit(RingError):
    pass


class MatrixError(SympCompError):
    pass


class NonSquare(MatrixError):
    pass


class NotAlternating(MatrixError):
    pass


class OddSize(MatrixError):
    pass


class DiagonalIndex(MatrixError):
    pass


class BadIndices(MatrixError):
    pass


class WordError(SympCompError):
    pass


class DecompositionFailed(WordError):
    pass


class TransferFailed(WordError):
    pass


class RewriteFailed(WordError):
    pass


class RowError(SympCompError):
    pass


class WitnessBroken(RowError):
    pass


class PfaffianNotOne(RowError):
    pass


class FirstCoordMismatch(RowError):
    pass


class ReductionUnavailable(RowError):
    pass


class WittError(SympCompError):
    pass


class ReductionMismatch(WittError):
    pass


class SearchFailed(WittError):
    def __init__(self, message, explored=0):
        super().__init__(message)
        self.explored = explored


class CompletionError(SympCompError):
    pass


class RelationBroken(CompletionError):
    pass


class NoStrategy(CompletionError):
    pass


class LiftUnsupported(CompletionError):
    pass


class StepFailed(CompletionError):
    def __init__(self, step, message, trace=None):
        super().__init__(f"step {step!r} failed: {message}")
        self.step = step
        self.trace = trace


class ParseError(SympCompError):
    def __init__(self, message, position=None, text=None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")
        self.position = position
        self.text = text
