"""Exception hierarchy shared by all modules."""


class GameError(Exception):
    """Base class for every error raised by this package."""


class CycleDetected(GameError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("option relation has a cycle: " + " -> ".join(map(str, self.cycle)))


class DanglingEdge(GameError):
    pass


class EmptyPositionSet(GameError):
    pass


class UnknownPosition(GameError):
    pass


class NoWitness(GameError):
    pass


class SizeLimitExceeded(GameError):
    pass


class EmptySubtractionSet(GameError):
    pass


class UncoveredVertex(GameError):
    pass


class EmptyFaceList(GameError):
    pass


class UnknownVertexInFace(GameError):
    pass


class LengthMismatch(GameError):
    pass


class IllegalMove(GameError):
    pass


class ParseError(GameError):
    pass


class ValidationError(GameError):
    def __init__(self, message, cause=None):
        self.cause = cause
        super().__init__(message)
