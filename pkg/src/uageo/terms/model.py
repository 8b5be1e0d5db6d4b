from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from uageo.errors import ArityMismatch, IndexOutOfRange, InputError, UnknownSymbol


@dataclass(frozen=True, slots=True)
class Variable:
    """A free generator x_index of W(X); indices start at 1."""

    index: int


@dataclass(frozen=True, slots=True)
class Apply:
    """An operation symbol applied to argument terms (constants have no args)."""

    symbol: str
    args: tuple["Term", ...] = ()


Term = Variable | Apply


class Signature:
    """Operation symbols with their arities, in declaration order."""

    def __init__(self, symbols: tuple[tuple[str, int], ...]):
        positions: dict[str, int] = {}
        for position, (name, arity) in enumerate(symbols):
            if name in positions:
                raise InputError(f"duplicate operation symbol '{name}'")
            if arity < 0:
                raise InputError(f"negative arity {arity} for '{name}'")
            positions[name] = position
        self._symbols = tuple(symbols)
        self._positions = positions

    @classmethod
    def of(cls, symbols: Iterable[tuple[str, int]]) -> "Signature":
        return cls(tuple((name, arity) for name, arity in symbols))

    @property
    def symbols(self) -> tuple[tuple[str, int], ...]:
        return self._symbols

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self._symbols]

    @property
    def constants(self) -> list[str]:
        return [name for name, arity in self._symbols if arity == 0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        return f"Signature({list(self._symbols)!r})"

    def __contains__(self, name: object) -> bool:
        return name in self._positions

    def arity(self, name: str) -> int:
        if name not in self._positions:
            raise UnknownSymbol(f"unknown operation symbol '{name}'")
        return self._symbols[self._positions[name]][1]

    def position(self, name: str) -> int:
        if name not in self._positions:
            raise UnknownSymbol(f"unknown operation symbol '{name}'")
        return self._positions[name]

    def check(self, term: Term, var_count: int):
        """Raises if the term is not well formed over this signature and X."""
        match term:
            case Variable(index):
                if not 1 <= index <= var_count:
                    raise IndexOutOfRange(
                        f"variable index {index} outside 1..{var_count}"
                    )
            case Apply(symbol, args):
                arity = self.arity(symbol)
                if len(args) != arity:
                    raise ArityMismatch(
                        f"'{symbol}' takes {arity} arguments, got {len(args)}"
                    )
                for arg in args:
                    self.check(arg, var_count)

    def term_key(self, term: Term) -> tuple:
        """Sort key that reproduces the canonical enumeration order.

        Terms are grouped by height; within a height variables come first by index,
        then constants, then applications by symbol position and argument keys.
        """
        match term:
            case Variable(index):
                return (0, 0, index)
            case Apply(symbol, ()):
                return (0, 1, self.position(symbol))
            case Apply(symbol, args):
                arg_keys = tuple(self.term_key(arg) for arg in args)
                height = 1 + max(key[0] for key in arg_keys)
                return (height, 2, self.position(symbol), arg_keys)
        raise TypeError(f"not a term: {term!r}")


def highest_variable(term: Term) -> int:
    """Largest variable index occurring in the term, 0 for ground terms."""
    match term:
        case Variable(index):
            return index
        case Apply(_, args):
            return max((highest_variable(arg) for arg in args), default=0)
    raise TypeError(f"not a term: {term!r}")


def format_term(term: Term, prefix: str = "x") -> str:
    match term:
        case Variable(index):
            return f"{prefix}{index}"
        case Apply(symbol, ()):
            return symbol
        case Apply(symbol, args):
            inner = " ".join(format_term(arg, prefix) for arg in args)
            return f"({symbol} {inner})"
    raise TypeError(f"not a term: {term!r}")


@dataclass(frozen=True, slots=True)
class Equation:
    lhs: Term
    rhs: Term

    def format(self, prefix: str = "x") -> str:
        return f"{format_term(self.lhs, prefix)} = {format_term(self.rhs, prefix)}"

    def __str__(self) -> str:
        return self.format()


class Substitution:
    """A homomorphism s: W(Y) -> W(X) given by the images of y1..y_source."""

    def __init__(self, source_count: int, target_count: int, images: tuple[Term, ...]):
        if len(images) != source_count:
            raise IndexOutOfRange(
                f"substitution needs {source_count} images, got {len(images)}"
            )
        for image in images:
            if highest_variable(image) > target_count:
                raise IndexOutOfRange(
                    f"image {format_term(image)} uses variables beyond x{target_count}"
                )
        self._source_count = source_count
        self._target_count = target_count
        self._images = tuple(images)

    @classmethod
    def identity(cls, var_count: int) -> "Substitution":
        images = tuple(Variable(i) for i in range(1, var_count + 1))
        return cls(var_count, var_count, images)

    @classmethod
    def of(cls, target_count: int, images: Sequence[Term]) -> "Substitution":
        return cls(len(images), target_count, tuple(images))

    @property
    def source_count(self) -> int:
        return self._source_count

    @property
    def target_count(self) -> int:
        return self._target_count

    @property
    def images(self) -> tuple[Term, ...]:
        return self._images

    def __repr__(self) -> str:
        shown = ", ".join(format_term(image) for image in self._images)
        return f"Substitution(y -> [{shown}] over x1..x{self._target_count})"
