import logging

import numpy as np

from uageo.algebra.model import FiniteAlgebra
from uageo.errors import EmptyCarrier, InputError, ParseError, TableError
from uageo.terms.model import Signature

logger = logging.getLogger(__name__)


class LineTokens:
    """Whitespace tokens of a text file, each remembering its line number."""

    def __init__(self, text: str):
        self._tokens: list[tuple[int, str]] = []
        for line_number, line in enumerate(text.splitlines(), start=1):
            content = line.split("#", 1)[0]
            self._tokens.extend((line_number, token) for token in content.split())
        self._position = 0
        self._last_line = self._tokens[-1][0] if self._tokens else 1

    @property
    def exhausted(self) -> bool:
        return self._position >= len(self._tokens)

    @property
    def line(self) -> int:
        """Line of the next token (or of the last one at end of input)."""
        if self.exhausted:
            return self._last_line
        return self._tokens[self._position][0]

    def peek(self) -> str | None:
        return None if self.exhausted else self._tokens[self._position][1]

    def next(self, expected: str) -> str:
        if self.exhausted:
            raise ParseError(
                f"unexpected end of file, expected {expected}", line=self.line
            )
        token = self._tokens[self._position][1]
        self._position += 1
        return token

    def keyword(self, word: str):
        line = self.line
        token = self.next(f"'{word}'")
        if token != word:
            raise ParseError(f"expected '{word}', got '{token}'", line=line)

    def integer(self, what: str) -> int:
        line = self.line
        token = self.next(what)
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"expected {what}, got '{token}'", line=line) from None


def load_algebra(text: str, source: str | None = None) -> FiniteAlgebra:
    """Parses the algebra file format.

    algebra NAME
    size M
    op NAME ARITY
    <M**ARITY values, argument tuples in lexicographic order>
    ...
    """
    try:
        return _load_algebra(LineTokens(text))
    except InputError as err:
        raise err.at(source) from None


def _load_algebra(tokens: LineTokens) -> FiniteAlgebra:
    tokens.keyword("algebra")
    name = tokens.next("an algebra name")
    tokens.keyword("size")
    size_line = tokens.line
    size = tokens.integer("the carrier size")
    if size == 0:
        raise EmptyCarrier(f"algebra '{name}' has size 0", line=size_line)
    if size < 0:
        raise ParseError(f"negative carrier size {size}", line=size_line)

    symbols: list[tuple[str, int]] = []
    tables: dict[str, np.ndarray] = {}
    while not tokens.exhausted:
        op_line = tokens.line
        tokens.keyword("op")
        symbol = tokens.next("an operation name")
        arity = tokens.integer("an arity")
        if arity < 0:
            raise ParseError(f"negative arity for '{symbol}'", line=op_line)
        if symbol in tables:
            raise ParseError(f"operation '{symbol}' declared twice", line=op_line)

        values: list[int] = []
        while not tokens.exhausted and tokens.peek() != "op":
            value_line = tokens.line
            value = tokens.integer(f"a table value for '{symbol}'")
            if not 0 <= value < size:
                raise TableError(
                    f"value {value} in table '{symbol}' is outside 0..{size - 1}",
                    line=value_line,
                )
            values.append(value)
        expected = size**arity
        if len(values) != expected:
            raise TableError(
                f"table '{symbol}' needs {expected} entries, got {len(values)}",
                line=op_line,
            )
        symbols.append((symbol, arity))
        tables[symbol] = np.array(values, dtype=np.intp).reshape((size,) * arity)

    logger.debug(f"loaded algebra {name} of size {size} with {len(symbols)} operations")
    return FiniteAlgebra(name, Signature.of(symbols), size, tables)


def format_algebra(algebra: FiniteAlgebra) -> str:
    lines = [f"algebra {algebra.name}", f"size {algebra.size}"]
    for symbol, arity in algebra.signature.symbols:
        lines.append(f"op {symbol} {arity}")
        values = algebra.table(symbol).reshape(-1)
        row = algebra.size if arity > 0 else 1
        for start in range(0, len(values), row):
            lines.append(" ".join(str(v) for v in values[start : start + row]))
    return "\n".join(lines) + "\n"
