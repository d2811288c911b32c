"""Exception types shared across the package.

Every error carries a short upper-case ``code`` so callers (and the CLI) can
branch on the failure kind without parsing messages.
"""

from __future__ import annotations


class CancelKitError(Exception):
    """Base class. ``code`` names the failure, e.g. ``"REDUCIBLE"``."""

    def __init__(self, code: str, message: str = ""):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code
        self.message = message


class NumberFieldError(CancelKitError):
    pass


class PolynomialError(CancelKitError):
    pass


class ConicError(CancelKitError):
    pass


class CertificateFailure(CancelKitError):
    """An algebraic certificate did not check out. Always a bug, never a verdict."""

    def __init__(self, message: str = ""):
        super().__init__("CERTIFICATE_FAILURE", message)


class ParseError(CancelKitError):
    def __init__(self, code: str, message: str, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(code, message + where)
        self.position = position


class WitnessError(CancelKitError):
    """Pair generation ran out of candidates, e.g. ``INSUFFICIENT_POINTS``."""
