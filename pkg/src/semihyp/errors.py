"""Exception types shared across the package."""

from __future__ import annotations


class SemihypError(Exception):
    """Base class for all package errors."""


class UnknownPointError(SemihypError):
    def __init__(self, name: str):
        super().__init__(f"unknown point {name}")
        self.name = name


class SpaceMismatchError(SemihypError):
    """Raised when measures or functions on different spaces are combined."""


class ConstraintError(SemihypError):
    """A constructor precondition failed; the message names the violated equation."""


class VerificationError(SemihypError):
    """An axiom check failed during construction.

    Carries the name of the failed check and its witness so callers can
    report the exact counterexample.
    """

    def __init__(self, check: str, witness, message: str):
        super().__init__(message)
        self.check = check
        self.witness = witness


class StructureParseError(SemihypError):
    """Malformed structure or action file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
