from collections.abc import Mapping, Sequence

import numpy as np

from uageo.errors import EmptyCarrier, SignatureMismatch, TableError, UnknownSymbol
from uageo.terms.model import Signature


class FiniteAlgebra:
    """An algebra on {0..size-1} given by one total operation table per symbol.

    A k-ary table is a read-only integer array of shape (size,) * k, indexed by
    argument tuples; nullary tables have shape ().
    """

    def __init__(
        self,
        name: str,
        signature: Signature,
        size: int,
        tables: Mapping[str, np.ndarray],
    ):
        if size < 1:
            raise EmptyCarrier(
                f"algebra '{name}' has size {size}; carriers are non-empty"
            )
        self._name = name
        self._signature = signature
        self._size = size
        self._tables: dict[str, np.ndarray] = {}

        for symbol, arity in signature.symbols:
            if symbol not in tables:
                raise TableError(f"no table for operation '{symbol}'")
            table = np.array(tables[symbol], dtype=np.intp)
            if table.shape != (size,) * arity:
                raise TableError(
                    f"table for '{symbol}' must have {size**arity} entries "
                    f"(shape {(size,) * arity}), got shape {table.shape}"
                )
            if table.size and (table.min() < 0 or table.max() >= size):
                raise TableError(
                    f"table for '{symbol}' has a value outside 0..{size - 1}"
                )
            table.flags.writeable = False
            self._tables[symbol] = table

        extra = set(tables) - set(signature.names)
        if extra:
            raise TableError(f"tables for undeclared operations: {sorted(extra)}")

    @property
    def name(self) -> str:
        return self._name

    @property
    def signature(self) -> Signature:
        return self._signature

    @property
    def size(self) -> int:
        return self._size

    def table(self, symbol: str) -> np.ndarray:
        if symbol not in self._tables:
            raise UnknownSymbol(f"algebra '{self._name}' has no operation '{symbol}'")
        return self._tables[symbol]

    def apply(self, symbol: str, *args: int) -> int:
        return int(self.table(symbol)[args])

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self._name!r}, size={self._size})"


def require_shared_signature(*algebras: FiniteAlgebra) -> Signature:
    signature = algebras[0].signature
    for algebra in algebras[1:]:
        if algebra.signature != signature:
            raise SignatureMismatch(
                f"'{algebra.name}' and '{algebras[0].name}' have different signatures"
            )
    return signature


class Homomorphism:
    """A map between two algebras of one signature, listed by source element."""

    def __init__(
        self, source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]
    ):
        require_shared_signature(source, target)
        if len(mapping) != source.size:
            raise TableError(
                f"map must have {source.size} entries, got {len(mapping)}"
            )
        if any(not 0 <= b < target.size for b in mapping):
            raise TableError(f"map {tuple(mapping)} leaves 0..{target.size - 1}")
        self._source = source
        self._target = target
        self._mapping = tuple(int(b) for b in mapping)

    @property
    def source(self) -> FiniteAlgebra:
        return self._source

    @property
    def target(self) -> FiniteAlgebra:
        return self._target

    @property
    def mapping(self) -> tuple[int, ...]:
        return self._mapping

    def __call__(self, element: int) -> int:
        return self._mapping[element]

    def preserves(self) -> bool:
        """Checks map[f_src(a1..ak)] = f_tgt(map[a1]..map[ak]) for every tuple."""
        images = np.asarray(self._mapping, dtype=np.intp)
        for symbol, arity in self._source.signature.symbols:
            src = self._source.table(symbol)
            tgt = self._target.table(symbol)
            if arity == 0:
                if images[src[()]] != tgt[()]:
                    return False
                continue
            mapped = images[src]
            pushed = tgt[np.ix_(*([images] * arity))]
            if not np.array_equal(mapped, pushed):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Homomorphism)
            and other._source is self._source
            and other._target is self._target
            and other._mapping == self._mapping
        )

    def __hash__(self) -> int:
        return hash((id(self._source), id(self._target), self._mapping))

    def __repr__(self) -> str:
        arrow = f"{self._source.name} -> {self._target.name}"
        return f"Homomorphism({arrow}, {self._mapping})"
