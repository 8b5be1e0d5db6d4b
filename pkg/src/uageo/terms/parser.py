import re

from uageo.errors import (
    ArityMismatch,
    IndexOutOfRange,
    InputError,
    ParseError,
    UnknownSymbol,
)
from uageo.terms.model import Apply, Equation, Signature, Term, Variable

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(=)|([^\s()=]+))")
_VARIABLE = re.compile(r"[xy](\d+)")


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character at column {position + 1}")
        tokens.append(match.group(match.lastindex or 0))
        position = match.end()
    return tokens


class _TermReader:
    def __init__(self, tokens: list[str], signature: Signature, var_count: int):
        self._tokens = tokens
        self._position = 0
        self._signature = signature
        self._var_count = var_count

    @property
    def exhausted(self) -> bool:
        return self._position >= len(self._tokens)

    def peek(self) -> str | None:
        return None if self.exhausted else self._tokens[self._position]

    def next(self) -> str:
        if self.exhausted:
            raise ParseError("unexpected end of input")
        token = self._tokens[self._position]
        self._position += 1
        return token

    def read_term(self) -> Term:
        token = self.next()
        if token == "(":
            return self._read_application()
        if token in (")", "="):
            raise ParseError(f"unexpected '{token}'")
        return self._read_atom(token)

    def _read_atom(self, token: str) -> Term:
        variable = _VARIABLE.fullmatch(token)
        if variable is not None:
            index = int(variable.group(1))
            if not 1 <= index <= self._var_count:
                raise IndexOutOfRange(
                    f"variable {token} outside 1..{self._var_count}"
                )
            return Variable(index)
        arity = self._signature.arity(token)
        if arity != 0:
            raise ArityMismatch(f"'{token}' takes {arity} arguments, got 0")
        return Apply(token)

    def _read_application(self) -> Term:
        symbol = self.next()
        if symbol in ("(", ")", "=") or _VARIABLE.fullmatch(symbol):
            raise ParseError(f"expected an operation symbol, got '{symbol}'")
        if symbol not in self._signature:
            raise UnknownSymbol(f"unknown operation symbol '{symbol}'")
        args: list[Term] = []
        while self.peek() != ")":
            if self.exhausted:
                raise ParseError(f"missing ')' after '({symbol}'")
            args.append(self.read_term())
        self.next()
        if not args:
            raise ParseError(f"application of '{symbol}' needs at least one argument")
        arity = self._signature.arity(symbol)
        if len(args) != arity:
            raise ArityMismatch(f"'{symbol}' takes {arity} arguments, got {len(args)}")
        return Apply(symbol, tuple(args))


def parse_term(text: str, signature: Signature, var_count: int) -> Term:
    reader = _TermReader(tokenize(text), signature, var_count)
    term = reader.read_term()
    if not reader.exhausted:
        raise ParseError(f"trailing input after term: '{reader.peek()}'")
    return term


def parse_equation(text: str, signature: Signature, var_count: int) -> Equation:
    reader = _TermReader(tokenize(text), signature, var_count)
    lhs = reader.read_term()
    if reader.peek() != "=":
        raise ParseError("expected '=' between the two sides of an equation")
    reader.next()
    rhs = reader.read_term()
    if not reader.exhausted:
        raise ParseError(f"trailing input after equation: '{reader.peek()}'")
    return Equation(lhs, rhs)


def parse_equations(
    text: str, signature: Signature, var_count: int, source: str | None = None
) -> list[Equation]:
    """Reads a system file: one equation per line, '#' comments, blank lines."""
    equations: list[Equation] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            equations.append(parse_equation(stripped, signature, var_count))
        except InputError as err:
            raise err.at(source, line_number) from None
    return equations


def parse_terms(
    text: str, signature: Signature, var_count: int, source: str | None = None
) -> list[Term]:
    """Reads one term per non-blank, non-comment line."""
    terms: list[Term] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            terms.append(parse_term(stripped, signature, var_count))
        except InputError as err:
            raise err.at(source, line_number) from None
    return terms
