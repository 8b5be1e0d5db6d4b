import itertools
import logging
from collections.abc import Sequence
from typing import TYPE_CHECKING

import numpy as np

from uageo.errors import ArityMismatch, IndexOutOfRange
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.terms.model import Apply, Signature, Substitution, Term, Variable

if TYPE_CHECKING:
    from uageo.algebra.model import FiniteAlgebra

logger = logging.getLogger(__name__)


def evaluate_many(term: Term, algebra: "FiniteAlgebra", points: np.ndarray) -> np.ndarray:
    """Evaluates the term at every row of `points` (shape (N, n)) at once."""
    match term:
        case Variable(index):
            if not 1 <= index <= points.shape[1]:
                raise IndexOutOfRange(
                    f"variable x{index} outside 1..{points.shape[1]}"
                )
            return points[:, index - 1]
        case Apply(symbol, args):
            table = algebra.table(symbol)
            if len(args) != table.ndim:
                raise ArityMismatch(
                    f"'{symbol}' takes {table.ndim} arguments, got {len(args)}"
                )
            if not args:
                return np.full(points.shape[0], table[()], dtype=np.intp)
            return table[tuple(evaluate_many(arg, algebra, points) for arg in args)]
    raise TypeError(f"not a term: {term!r}")


def evaluate_enumerated(
    terms: Sequence[Term], algebra: "FiniteAlgebra", points: np.ndarray
) -> np.ndarray:
    """Values of many terms at every point, as an array of shape (len(terms), N).

    Subterm values are remembered, so a list in which arguments precede the terms
    built from them (such as enumerate_terms output) costs one lookup per term.
    """
    known: dict[Term, np.ndarray] = {}
    values = np.empty((len(terms), points.shape[0]), dtype=np.intp)
    for position, term in enumerate(terms):
        match term:
            case Apply(symbol, args) if args and all(arg in known for arg in args):
                table = algebra.table(symbol)
                if len(args) != table.ndim:
                    raise ArityMismatch(
                        f"'{symbol}' takes {table.ndim} arguments, got {len(args)}"
                    )
                vector = table[tuple(known[arg] for arg in args)]
            case _:
                vector = evaluate_many(term, algebra, points)
        known[term] = vector
        values[position] = vector
    return values


def evaluate(term: Term, algebra: "FiniteAlgebra", point: Sequence[int]) -> int:
    coordinates = np.asarray(point, dtype=np.intp).reshape(1, len(point))
    if coordinates.size and (coordinates.min() < 0 or coordinates.max() >= algebra.size):
        raise IndexOutOfRange(f"point {tuple(point)} is not over a carrier of size "
                              f"{algebra.size}")
    return int(evaluate_many(term, algebra, coordinates)[0])


def term_height(term: Term) -> int:
    match term:
        case Variable(_) | Apply(_, ()):
            return 0
        case Apply(_, args):
            return 1 + max(term_height(arg) for arg in args)
    raise TypeError(f"not a term: {term!r}")


def term_size(term: Term) -> int:
    """Number of nodes in the term tree."""
    match term:
        case Variable(_):
            return 1
        case Apply(_, args):
            return 1 + sum(term_size(arg) for arg in args)
    raise TypeError(f"not a term: {term!r}")


def substitute(term: Term, substitution: Substitution) -> Term:
    match term:
        case Variable(index):
            if not 1 <= index <= substitution.source_count:
                raise IndexOutOfRange(
                    f"variable y{index} outside 1..{substitution.source_count}"
                )
            return substitution.images[index - 1]
        case Apply(symbol, args):
            return Apply(symbol, tuple(substitute(arg, substitution) for arg in args))
    raise TypeError(f"not a term: {term!r}")


def compose(outer: Substitution, inner: Substitution) -> Substitution:
    """outer∘inner, so that substituting by it equals inner then outer."""
    if inner.target_count != outer.source_count:
        raise IndexOutOfRange(
            f"cannot compose: inner lands in {inner.target_count} variables, "
            f"outer reads {outer.source_count}"
        )
    images = tuple(substitute(image, outer) for image in inner.images)
    return Substitution(inner.source_count, outer.target_count, images)


def count_terms(signature: Signature, var_count: int, depth: int) -> int:
    """Number of terms enumerate_terms would return, without building them."""
    total = var_count + len(signature.constants)
    below = 0
    for _ in range(depth):
        generation = sum(
            total**arity - below**arity
            for _, arity in signature.symbols
            if arity > 0
        )
        below, total = total, total + generation
    return total


def enumerate_terms(
    signature: Signature,
    var_count: int,
    depth: int,
    limits: Limits = DEFAULT_LIMITS,
) -> list[Term]:
    """All terms of height <= depth in canonical order.

    Terms come out one height at a time, so the list for depth d is a prefix of the
    list for depth d + 1.
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    limits.check("max_terms", count_terms(signature, var_count, depth))

    terms: list[Term] = [Variable(i) for i in range(1, var_count + 1)]
    terms.extend(Apply(name) for name in signature.constants)
    previous_count = 0
    for height in range(1, depth + 1):
        known = list(terms)
        generation: list[Term] = []
        for symbol, arity in signature.symbols:
            if arity == 0:
                continue
            for indices in itertools.product(range(len(known)), repeat=arity):
                # at least one argument must come from the newest generation
                if max(indices) < previous_count:
                    continue
                generation.append(Apply(symbol, tuple(known[i] for i in indices)))
        previous_count = len(known)
        terms.extend(generation)
        logger.debug(f"height {height}: {len(generation)} new terms, {len(terms)} total")
    return terms
