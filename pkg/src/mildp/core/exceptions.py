"""Typed errors raised by the mildp pipeline."""
from enum import Enum, auto
from typing import List, Optional


class ErrorType(Enum):
    INPUT_ERROR = auto()
    PRECONDITION_ERROR = auto()
    ARITHMETIC_ERROR = auto()
    INTERNAL_ERROR = auto()


class MildpError(Exception):
    """Base error with a category, an optional reference and recovery suggestions."""

    def __init__(
        self,
        message: str,
        error_type: ErrorType = ErrorType.INPUT_ERROR,
        suggestions: Optional[List[str]] = None,
        reference: Optional[str] = None,
    ):
        super().__init__(message)
        self.message = message
        self.error_type = error_type
        self.suggestions = suggestions or []
        self.reference = reference

    def __str__(self) -> str:
        result = f"[{self.error_type.name}] {self.message}"
        if self.reference:
            result += f" (see {self.reference})"
        if self.suggestions:
            result += "\nSuggestions:"
            for suggestion in self.suggestions:
                result += f"\n  - {suggestion}"
        return result


class InvalidFieldError(MildpError):
    pass


class InvalidPlaceError(MildpError):
    pass


class OrderingError(MildpError):
    pass


class PreconditionError(MildpError):
    def __init__(self, message: str, suggestions: Optional[List[str]] = None,
                 reference: Optional[str] = None):
        super().__init__(message, ErrorType.PRECONDITION_ERROR, suggestions, reference)


class PRankError(PreconditionError):
    pass


class NoSingularPlaceError(PreconditionError):
    pass


class NormCongruenceError(PreconditionError):
    pass


class CardinalityError(PreconditionError):
    pass


class MalformedSetError(PreconditionError):
    pass


class ResidueError(MildpError):
    def __init__(self, message: str, suggestions: Optional[List[str]] = None):
        super().__init__(message, ErrorType.ARITHMETIC_ERROR, suggestions)


class NotPrincipalError(MildpError):
    def __init__(self, message: str, suggestions: Optional[List[str]] = None):
        super().__init__(message, ErrorType.ARITHMETIC_ERROR, suggestions)


class InternalArithmeticError(MildpError):
    """A state the arithmetic guarantees cannot happen on valid inputs."""

    def __init__(self, message: str, cause: Optional[BaseException] = None):
        super().__init__(message, ErrorType.INTERNAL_ERROR)
        self.cause = cause
