"""Exception hierarchy shared by every module."""


class CospanError(Exception):
    """Base class for all errors raised by cospankit."""


class DuplicateLabel(CospanError, ValueError):
    pass


class TypeMismatch(CospanError, ValueError):
    pass


class NotACocone(CospanError, ValueError):
    pass


class NotParallel(TypeMismatch):
    pass


class NotLeftAdjoint(CospanError, ValueError):
    pass


class NotCommuting(CospanError, ValueError):
    pass


class NotRigidCandidate(CospanError, ValueError):
    pass


class CounitalityFailed(CospanError):
    def __init__(self, side, message=None):
        self.side = side
        super().__init__(message or f"counitality fails on the {side} side")


class ClassificationCounterexample(CospanError):
    pass


class GenerationGap(CospanError):
    pass


class _PlainKeyError(KeyError):
    # KeyError quotes its message; these are read by people
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class MissingGeneratorImage(CospanError, _PlainKeyError):
    pass


class SimplicialIdentityFailure(CospanError):
    pass


class ParseError(CospanError, ValueError):
    pass


class UnknownName(CospanError, _PlainKeyError):
    pass
