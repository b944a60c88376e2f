#!/usr/bin/env python3
"""
Error Hierarchy
Exceptions raised by the library and mapped to exit codes by the CLI
"""

from typing import Optional


class SloccLabError(Exception):
    """Base class for every library error"""


class DomainError(SloccLabError):
    """Precondition or domain violation (wrong sector, support, kind)"""


class ResourceError(DomainError):
    """Construction refused by the size guard"""


class IndeterminateError(DomainError):
    """Reference evaluator vanished on every sample"""


class MismatchError(DomainError):
    """No single proportionality constant fits the samples"""


class ParseError(SloccLabError):
    """Malformed state file"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
