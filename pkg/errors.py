# errors.py
"""
Exception hierarchy for homotower.

cli.main() maps these to exit codes:
  - input problems (parse, bad flags, unknown fixture)  -> 2
  - VerificationFailure / TheoremContradiction          -> 1
  - ResourceCapError                                    -> 3
"""

from __future__ import annotations

from typing import Optional


class HomotowerError(Exception):
    """Base class for every error raised on purpose by this package."""


class InputError(HomotowerError):
    """Bad user input that is not a parse error (unknown fixture, bad flag)."""


class MalformedLetterError(HomotowerError, ValueError):
    """A letter index of 0, or one outside the alphabet."""


class PresentationParseError(InputError):
    def __init__(self, message: str, line: int, column: int, kind: str = "syntax"):
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind
        super().__init__(f"{message} (line {line}, column {column})")


class NotPrimeError(HomotowerError, ValueError):
    pass


class ResourceCapError(HomotowerError):
    """A configured cap (cosets, generators, depth) was hit."""


class CosetCapExceeded(ResourceCapError):
    pass


class EnumerationOverflow(ResourceCapError):
    """Todd-Coxeter ran past its coset limit; the index may be infinite."""


class GeneratorCapExceeded(ResourceCapError):
    pass


class VerificationFailure(HomotowerError):
    def __init__(self, check: str, detail: Optional[str] = None):
        self.check = check
        self.detail = detail
        msg = check if not detail else f"{check}: {detail}"
        super().__init__(msg)


class TheoremContradiction(VerificationFailure):
    """
    A deeper level violated betti = 0 or dim H^1(., F_p) <= 3 below a level
    where the (Z/p)^3 hypothesis was certified. That is a bug, not a discovery.
    """
