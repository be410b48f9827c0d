"""Exception hierarchy shared by every analyser."""


class AglintError(Exception):
    """Base class for all errors raised by aglint."""


class SpanError(AglintError, IndexError):
    """An offset pair falls outside the document text."""


class ValidationError(AglintError, ValueError):
    pass


class StateError(AglintError):
    """An analyser ran before its prerequisites (pipeline misordering)."""


class UnsupportedError(AglintError, ValueError):
    pass


class ParseError(AglintError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.source:
            where.append(self.source)
        if self.line is not None:
            where.append(str(self.line))
        if where:
            return f"{':'.join(where)}: {self.message}"
        return self.message


class ConfigError(AglintError):
    """A pipeline resource (lexicon, grammar, config) could not be loaded."""
