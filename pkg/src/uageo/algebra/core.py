import itertools
import logging
import math
from collections import deque
from collections.abc import Iterable, Sequence

import numpy as np

from uageo.algebra.model import FiniteAlgebra, Homomorphism, require_shared_signature
from uageo.errors import GeneratorsInsufficient, IndexOutOfRange, SignatureMismatch
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.terms.model import Signature

logger = logging.getLogger(__name__)

# Candidate maps are checked against the operation tables in blocks of this many rows
_HOM_BLOCK = 1 << 15


def cartesian_power(size: int, width: int) -> np.ndarray:
    """All width-tuples over {0..size-1} as rows, in lexicographic order."""
    if width == 0:
        return np.zeros((1, 0), dtype=np.intp)
    return np.indices((size,) * width, dtype=np.intp).reshape(width, -1).T


class Componentwise:
    """Operations of a product of algebras, acting coordinate by coordinate.

    Elements are rows with one coordinate per column algebra. Columns that share an
    algebra are evaluated with a single table lookup.
    """

    def __init__(self, signature: Signature, columns: Sequence[FiniteAlgebra]):
        if columns:
            shared = require_shared_signature(*columns)
            if shared != signature:
                raise SignatureMismatch("column algebras do not match the signature")
        self._signature = signature
        self._columns = list(columns)
        groups: dict[int, tuple[FiniteAlgebra, list[int]]] = {}
        for position, algebra in enumerate(columns):
            groups.setdefault(id(algebra), (algebra, []))[1].append(position)
        self._groups = [
            (algebra, np.array(positions, dtype=np.intp))
            for algebra, positions in groups.values()
        ]

    @property
    def signature(self) -> Signature:
        return self._signature

    @property
    def width(self) -> int:
        return len(self._columns)

    def constant(self, symbol: str) -> tuple[int, ...]:
        return tuple(int(algebra.table(symbol)[()]) for algebra in self._columns)

    def apply(self, symbol: str, args: Sequence[np.ndarray]) -> np.ndarray:
        """Applies a symbol to stacked argument rows, each of shape (count, width)."""
        count = args[0].shape[0]
        result = np.empty((count, self.width), dtype=np.intp)
        for algebra, positions in self._groups:
            table = algebra.table(symbol)
            result[:, positions] = table[tuple(arg[:, positions] for arg in args)]
        return result


def saturate(
    operations: Componentwise,
    seeds: Iterable[Sequence[int]],
    limits: Limits = DEFAULT_LIMITS,
) -> np.ndarray:
    """Least set of rows containing the seeds and constants, closed under operations.

    Rows are returned in discovery order: seeds first, then constants, then
    breadth-first. When a row is processed, every argument tuple that uses it
    together with already processed rows is applied, so each tuple is tried once
    all of its entries are known.
    """
    width = operations.width
    index: dict[tuple[int, ...], int] = {}
    rows: list[tuple[int, ...]] = []
    queue: deque[int] = deque()

    def add(row: tuple[int, ...]):
        if row not in index:
            index[row] = len(rows)
            rows.append(row)
            queue.append(index[row])
            limits.check("max_subalgebra", len(rows))

    for seed in seeds:
        add(tuple(int(v) for v in seed))
    for symbol in operations.signature.constants:
        add(operations.constant(symbol))

    symbols = [(s, arity) for s, arity in operations.signature.symbols if arity > 0]
    while queue:
        current = queue.popleft()
        processed = np.array(rows[: current + 1], dtype=np.intp)
        processed = processed.reshape(current + 1, width)
        row = processed[current : current + 1]
        for symbol, arity in symbols:
            others = cartesian_power(current + 1, arity - 1)
            fixed = np.broadcast_to(row, (others.shape[0], width))
            for position in range(arity):
                args = [processed[others[:, j]] for j in range(arity - 1)]
                args.insert(position, fixed)
                for produced in operations.apply(symbol, args).tolist():
                    add(tuple(produced))

    return np.array(rows, dtype=np.intp).reshape(len(rows), width)


def generate_subalgebra(
    algebra: FiniteAlgebra,
    generators: Iterable[int],
    limits: Limits = DEFAULT_LIMITS,
) -> frozenset[int]:
    generators = list(generators)
    for g in generators:
        if not 0 <= g < algebra.size:
            raise IndexOutOfRange(f"generator {g} is not an element of '{algebra.name}'")
    operations = Componentwise(algebra.signature, [algebra])
    rows = saturate(operations, ((g,) for g in generators), limits)
    return frozenset(int(v) for v in rows[:, 0])


def generating_set(algebra: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS) -> list[int]:
    """A small generating set, picked greedily from the smallest missing element."""
    generators: list[int] = []
    covered = generate_subalgebra(algebra, generators, limits)
    for element in range(algebra.size):
        if element not in covered:
            generators.append(element)
            covered = generate_subalgebra(algebra, generators, limits)
    return generators


def induced_algebra(
    name: str,
    operations: Componentwise,
    rows: np.ndarray,
    limits: Limits = DEFAULT_LIMITS,
) -> FiniteAlgebra:
    """Relabels a closed set of product rows as a FiniteAlgebra on 0..len(rows)-1."""
    size = rows.shape[0]
    limits.check(
        "max_table_entries",
        sum(size**arity for _, arity in operations.signature.symbols),
    )
    index = {row: i for i, row in enumerate(map(tuple, rows.tolist()))}
    tables: dict[str, np.ndarray] = {}
    for symbol, arity in operations.signature.symbols:
        if arity == 0:
            tables[symbol] = np.array(index[operations.constant(symbol)], dtype=np.intp)
            continue
        combos = cartesian_power(size, arity)
        produced = operations.apply(symbol, [rows[combos[:, j]] for j in range(arity)])
        labels = [index[tuple(r)] for r in produced.tolist()]
        tables[symbol] = np.array(labels, dtype=np.intp).reshape((size,) * arity)
    return FiniteAlgebra(name, operations.signature, size, tables)


def _strides(sizes: Sequence[int]) -> np.ndarray:
    strides = [math.prod(sizes[j + 1 :]) for j in range(len(sizes))]
    return np.array(strides, dtype=np.intp)


def decode_product(sizes: Sequence[int]) -> np.ndarray:
    """Coordinates of every product element; the first factor is most significant."""
    return cartesian_power(1, 0) if not sizes else np.indices(
        tuple(sizes), dtype=np.intp
    ).reshape(len(sizes), -1).T


def direct_product(
    factors: Sequence[FiniteAlgebra],
    signature: Signature | None = None,
    name: str | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> FiniteAlgebra:
    if factors:
        shared = require_shared_signature(*factors)
        if signature is not None and signature != shared:
            raise SignatureMismatch("factors do not match the requested signature")
        signature = shared
    elif signature is None:
        raise SignatureMismatch("an empty product needs an explicit signature")

    sizes = [factor.size for factor in factors]
    size = math.prod(sizes)
    limits.check(
        "max_table_entries", sum(size**arity for _, arity in signature.symbols)
    )
    strides = _strides(sizes)
    coordinates = decode_product(sizes)
    operations = Componentwise(signature, factors)

    tables: dict[str, np.ndarray] = {}
    for symbol, arity in signature.symbols:
        if arity == 0:
            constant = operations.constant(symbol)
            code = sum(v * int(s) for v, s in zip(constant, strides, strict=True))
            tables[symbol] = np.array(code, dtype=np.intp)
            continue
        combos = cartesian_power(size, arity)
        args = [coordinates[combos[:, j]] for j in range(arity)]
        produced = operations.apply(symbol, args)
        tables[symbol] = (produced @ strides).astype(np.intp).reshape((size,) * arity)

    name = name or ("x".join(factor.name for factor in factors) or "trivial")
    logger.debug(f"built product {name} of size {size}")
    return FiniteAlgebra(name, signature, size, tables)


def projection(
    product: FiniteAlgebra, factors: Sequence[FiniteAlgebra], coordinate: int
) -> Homomorphism:
    coordinates = decode_product([factor.size for factor in factors])
    return Homomorphism(product, factors[coordinate], coordinates[:, coordinate].tolist())


def diagonal(
    algebra: FiniteAlgebra, power: int, product: FiniteAlgebra | None = None
) -> Homomorphism:
    """The map a -> (a, ..., a) into the power-fold product of the algebra."""
    if product is None:
        product = direct_product([algebra] * power)
    strides = _strides([algebra.size] * power)
    mapping = [element * int(strides.sum()) for element in range(algebra.size)]
    return Homomorphism(algebra, product, mapping)


def _homs_brute_force(
    source: FiniteAlgebra, target: FiniteAlgebra
) -> list[tuple[int, ...]]:
    candidates = cartesian_power(target.size, source.size)
    checks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
    for symbol, arity in source.signature.symbols:
        tuples = cartesian_power(source.size, arity)
        checks.append((source.table(symbol), target.table(symbol), tuples))

    found: list[tuple[int, ...]] = []
    for start in range(0, candidates.shape[0], _HOM_BLOCK):
        block = candidates[start : start + _HOM_BLOCK]
        for src, tgt, tuples in checks:
            if block.shape[0] == 0:
                break
            arity = tuples.shape[1]
            mapped = block[:, src[tuple(tuples.T)]] if arity else block[:, [src[()]]]
            pushed = tgt[tuple(block[:, tuples[:, j]] for j in range(arity))]
            block = block[(mapped == pushed).all(axis=1)]
        found.extend(tuple(row) for row in block.tolist())
    return found


def _homs_from_generators(
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    generators: Sequence[int],
    limits: Limits,
) -> list[tuple[int, ...]]:
    operations = Componentwise(source.signature, [source, target])
    found: list[tuple[int, ...]] = []
    for images in itertools.product(range(target.size), repeat=len(generators)):
        graph = saturate(operations, zip(generators, images, strict=True), limits)
        # the generated subalgebra of source x target is a graph iff it is functional
        if np.unique(graph[:, 0]).size != graph.shape[0]:
            continue
        mapping = np.empty(source.size, dtype=np.intp)
        mapping[graph[:, 0]] = graph[:, 1]
        found.append(tuple(mapping.tolist()))
    return found


def enumerate_homs(
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    generators: Iterable[int] | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> list[Homomorphism]:
    """All homomorphisms source -> target, sorted by their map vectors."""
    require_shared_signature(source, target)
    if generators is not None:
        gens = sorted(set(generators))
        if generate_subalgebra(source, gens, limits) != frozenset(range(source.size)):
            raise GeneratorsInsufficient(
                f"{gens} do not generate '{source.name}'"
            )
        maps = _homs_from_generators(source, target, gens, limits)
    elif target.size**source.size <= limits.max_hom_maps:
        maps = _homs_brute_force(source, target)
    else:
        gens = generating_set(source, limits)
        logger.debug(f"hom search {source.name} -> {target.name} over generators {gens}")
        maps = _homs_from_generators(source, target, gens, limits)
    return [Homomorphism(source, target, mapping) for mapping in sorted(maps)]
