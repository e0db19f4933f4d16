"""Exception hierarchy shared by the model, solvers and CLI."""

from __future__ import annotations

import numpy as np


class NonreciprocalError(Exception):
    """Base class for every error raised by this package."""


class NetworkError(NonreciprocalError):
    """Invalid network description."""


class DuplicateLabel(NetworkError):
    pass


class UnknownEndpoint(NetworkError):
    pass


class DuplicatePair(NetworkError):
    pass


class NegativeDamping(NetworkError):
    pass


class InvalidCoupling(NetworkError):
    """Self-loop or negative coupling magnitude."""


class UnknownPort(NonreciprocalError):
    pass


class SingularAtFrequency(NonreciprocalError):
    """The dynamical matrix (or a closed-form denominator) is singular at ``omega``.

    ``null_vector`` holds the right singular vector of the smallest singular
    value when the generic solver raised; closed forms leave it as ``None``.
    """

    def __init__(self, omega: float, null_vector: np.ndarray | None = None, detail: str = ""):
        self.omega = float(omega)
        self.null_vector = null_vector
        msg = f"singular at omega={self.omega!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InvalidParams(NonreciprocalError):
    pass


class InfeasibleCondition(NonreciprocalError):
    pass


class InfiniteIsolation(NonreciprocalError, ZeroDivisionError):
    """Reverse transmission amplitude vanishes, so the isolation ratio diverges."""


class AsymmetricGrid(NonreciprocalError):
    pass


class ConfigError(NonreciprocalError):
    pass


class ParseError(ConfigError):
    """Malformed configuration document; carries line/column when known."""

    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + msg)


class SchemaError(ConfigError):
    """Well-formed document with unknown, missing or conflicting fields."""

    def __init__(self, msg: str, field: str = ""):
        self.field = field
        super().__init__(f"{field}: {msg}" if field else msg)
