"""Exception hierarchy shared by all qface modules."""


class QFaceError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(QFaceError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LoopEdge(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class UnknownFormat(ParseError):
    pass


class EmptyVertexSet(ParseError):
    pass


class UnknownEdge(QFaceError):
    pass


class NotComponentwiseFull(QFaceError):
    pass


class NoRankFunction(QFaceError):
    pass


class ParentNotDouble(QFaceError):
    pass


class HigashitaniReject(QFaceError):
    """A labeling failed one of the two conditions; ``condition`` is 1 or 2."""

    def __init__(self, condition, message):
        self.condition = condition
        super().__init__(message)


class TooLarge(QFaceError):
    pass


class BadParams(QFaceError):
    pass


class ClosedFormUnavailable(QFaceError):
    pass


class CertificateError(AssertionError):
    """Raised when an emitted supporting-hyperplane certificate fails re-validation."""
