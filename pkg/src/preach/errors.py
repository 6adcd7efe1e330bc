"""Exception types shared across the package."""


class PreachError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(PreachError):
    """A graph file does not conform to its declared format."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


class CycleError(PreachError):
    """An operation that requires a DAG was given a cyclic graph."""


class WorkloadError(PreachError):
    """A workload of the requested kind cannot be generated for this graph."""


class IndexFormatError(PreachError):
    """A persisted index file is corrupt or has an unsupported version."""
