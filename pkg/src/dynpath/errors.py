"""Exception types shared by every structure in the package."""


class GraphError(Exception):
    """Base class for illegal operations on a dynamic graph structure."""


class DuplicateEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class EqualEndpoints(GraphError):
    pass


class OutOfRange(GraphError, IndexError):
    pass


class AlreadyMarked(GraphError):
    pass


class NotMarked(GraphError):
    pass


class TooLarge(GraphError):
    """An exponential-time routine was asked to exceed its size budget."""


class WidthExceeded(GraphError):
    """A tree decomposition bag is larger than the configured width allows."""


class ParseError(ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class IllegalEvent(GraphError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)
