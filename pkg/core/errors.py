from __future__ import annotations

from typing import Any, Optional, Sequence


class WKKitError(Exception):
    """Base class for every error raised by the toolkit."""


class DefinitionError(WKKitError, ValueError):
    """A machine or grammar definition violates its well-formedness rules."""


class ConfigError(WKKitError, ValueError):
    """An environment or flag override could not be applied."""


class NonDeterministicMachine(WKKitError):
    """A deterministic-only operation received a nondeterministic machine."""

    def __init__(self, message: str, pair: Optional[tuple[Any, Any]] = None) -> None:
        super().__init__(message)
        self.pair = pair


class InvalidStrand(WKKitError, ValueError):
    """A double strand breaks length equality or the complementarity relation."""

    def __init__(self, message: str, position: Optional[int] = None) -> None:
        super().__init__(message)
        self.position = position


class ResourceBound(WKKitError):
    """
    A configured search cap was exceeded. This is a third outcome next to
    accept and reject, never a rejection.
    """

    def __init__(self, reason: str, word: Optional[Sequence[str]] = None) -> None:
        super().__init__(reason)
        self.reason = reason
        self.word = tuple(word) if word is not None else None

    def with_word(self, word: Sequence[str]) -> "ResourceBound":
        return ResourceBound(self.reason, word)


class NotOneLimited(WKKitError):
    """A construction that needs a 1-limited machine got a wider rule."""


class UnsupportedRestrictionClass(WKKitError):
    """A construction does not apply to the machine's restriction class."""


class ConstructionError(WKKitError):
    """A construction's output failed its own post-condition check."""


class ParseError(WKKitError):
    """Text-format error pinned to a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class UnknownKind(ParseError):
    pass


class UndeclaredSymbol(ParseError):
    pass


class AlphabetMismatch(WKKitError, ValueError):
    """Two acceptors compared word by word read different alphabets."""


class UsageError(WKKitError):
    """Command-line input that the chosen subcommand cannot use."""
