import re

from uageo.errors import InputError, ParseError
from uageo.representation.model import ActionSummand, ActionTerm, GroupWord

_TOKEN = re.compile(r"\s*(x\d+|y\d+|\^-1|\d+|[-+*()])")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character at column {position + 1}")
        tokens.append(match.group(1))
        position = match.end()
    return tokens


class _ActionReader:
    """Recursive descent over the action-term grammar.

    term    := ["-"] summand (("+" | "-") summand)*
    summand := x<i> ["*" ("(" combo ")" | mono)]
    combo   := ["-"] mono (("+" | "-") mono)*
    mono    := <int> [word] | word
    word    := "1" | (y<j> ["^-1"])+
    """

    def __init__(self, tokens: list[str]):
        self._tokens = tokens
        self._position = 0

    def peek(self) -> str | None:
        if self._position >= len(self._tokens):
            return None
        return self._tokens[self._position]

    def next(self) -> str:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of action term")
        self._position += 1
        return token

    def expect(self, token: str):
        found = self.next()
        if found != token:
            raise ParseError(f"expected '{token}', got '{found}'")

    def read_term(self) -> ActionTerm:
        sign = self._read_sign(leading=True)
        summands = [self._read_summand(sign)]
        while self.peek() in ("+", "-"):
            summands.append(self._read_summand(self._read_sign(leading=False)))
        if self.peek() is not None:
            raise ParseError(f"trailing input after action term: '{self.peek()}'")
        return ActionTerm(tuple(summands))

    def _read_sign(self, leading: bool) -> int:
        token = self.peek()
        if token == "-":
            self.next()
            return -1
        if token == "+" and not leading:
            self.next()
        return 1

    def _read_summand(self, sign: int) -> ActionSummand:
        variable = self.next()
        if not variable.startswith("x"):
            raise ParseError(f"expected a module variable x<i>, got '{variable}'")
        combination: list[tuple[int, GroupWord]] = [(1, ())]
        if self.peek() == "*":
            self.next()
            if self.peek() == "(":
                self.next()
                combination = self._read_combination()
                self.expect(")")
            else:
                combination = [self._read_monomial(1)]
        signed = tuple((sign * c, word) for c, word in combination)
        return ActionSummand(int(variable[1:]), signed)

    def _read_combination(self) -> list[tuple[int, GroupWord]]:
        monomials = [self._read_monomial(self._read_sign(leading=True))]
        while self.peek() in ("+", "-"):
            monomials.append(self._read_monomial(self._read_sign(leading=False)))
        return monomials

    def _read_monomial(self, sign: int) -> tuple[int, GroupWord]:
        token = self.peek()
        if token is not None and token.isdigit():
            coefficient = int(self.next())
            following = self.peek()
            if following is not None and (following == "1" or following.startswith("y")):
                return sign * coefficient, self._read_word()
            return sign * coefficient, ()
        return sign, self._read_word()

    def _read_word(self) -> GroupWord:
        token = self.peek()
        if token == "1":
            self.next()
            return ()
        letters: list[tuple[int, int]] = []
        while (token := self.peek()) is not None and token.startswith("y"):
            self.next()
            exponent = 1
            if self.peek() == "^-1":
                self.next()
                exponent = -1
            letters.append((int(token[1:]), exponent))
        if not letters:
            raise ParseError(f"expected a group word, got '{token}'")
        return tuple(letters)


def parse_action_term(text: str, size_x: int, size_y: int) -> ActionTerm:
    term = _ActionReader(_tokenize(text)).read_term()
    term.check(size_x, size_y)
    return term


def parse_action_system(
    text: str, size_x: int, size_y: int, source: str | None = None
) -> list[ActionTerm]:
    """One action term per line, each read as the equation term = 0."""
    terms: list[ActionTerm] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            terms.append(parse_action_term(stripped, size_x, size_y))
        except InputError as err:
            raise err.at(source, line_number) from None
    return terms


def format_word(word: GroupWord) -> str:
    if not word:
        return "1"
    return " ".join(f"y{j}" if e == 1 else f"y{j}^-1" for j, e in word)


def _format_monomial(coefficient: int, word: GroupWord) -> str:
    magnitude = abs(coefficient)
    if not word:
        return str(magnitude)
    if magnitude == 1:
        return format_word(word)
    return f"{magnitude} {format_word(word)}"


def format_action_term(term: ActionTerm) -> str:
    parts: list[str] = []
    for summand in term.summands:
        pieces: list[str] = []
        for coefficient, word in summand.combination:
            monomial = _format_monomial(coefficient, word)
            if not pieces:
                pieces.append(f"-{monomial}" if coefficient < 0 else monomial)
            else:
                pieces.append(f"{'-' if coefficient < 0 else '+'} {monomial}")
        text = f"x{summand.variable} * ({' '.join(pieces)})"
        parts.append(text if not parts else f"+ {text}")
    return " ".join(parts)
