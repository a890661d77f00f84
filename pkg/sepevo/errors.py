# sepevo/errors.py

from typing import Optional


class SepevoError(ValueError):
    """Base class for every error raised on purpose by sepevo."""


class GraphFormatError(SepevoError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleInstanceError(SepevoError):
    pass


class InvalidSolutionError(SepevoError):
    pass
