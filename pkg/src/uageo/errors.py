class InputError(ValueError):
    """Base class for malformed input and violated preconditions."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        super().__init__(message)
        self._message = message
        self._source = source
        self._line = line

    @property
    def message(self) -> str:
        return self._message

    @property
    def source(self) -> str | None:
        """Name of the file the bad input came from, if known."""
        return self._source

    @property
    def line(self) -> int | None:
        """1-based line number within the source, if known."""
        return self._line

    def at(self, source: str | None, line: int | None = None) -> "InputError":
        """Attaches a location without overwriting one that is already known."""
        if self._source is None:
            self._source = source
        if self._line is None:
            self._line = line
        return self

    def __str__(self) -> str:
        if self._source is None and self._line is None:
            return self._message
        location = self._source or "<input>"
        if self._line is not None:
            location = f"{location}:{self._line}"
        return f"{location}: {self._message}"


class ParseError(InputError):
    pass


class ArityMismatch(InputError):
    pass


class UnknownSymbol(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class TableError(InputError):
    pass


class EmptyCarrier(InputError):
    pass


class SignatureMismatch(InputError):
    pass


class GeneratorsInsufficient(InputError):
    pass


class ElementNotInLattice(InputError):
    pass


class GroupAxiomViolation(InputError):
    pass


class ActionNotHomomorphic(InputError):
    pass


class ModulusMismatch(InputError):
    pass


class SizeLimitExceeded(ValueError):
    """An enumeration would grow past one of the configured caps."""

    def __init__(self, cap: str, required: int, allowed: int):
        super().__init__(f"{cap} exceeded: needs {required}, allowed {allowed}")
        self.cap = cap
        self.required = required
        self.allowed = allowed


class CriteriaConflict(RuntimeError):
    """Two independent decision procedures returned contradictory answers."""
