import logging
from collections.abc import Iterator, Sequence

import numpy as np

from uageo.algebra.core import cartesian_power
from uageo.errors import IndexOutOfRange
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.representation.model import (
    ActionTerm,
    FiniteGroup,
    FiniteRepresentation,
    GroupWord,
    RepPoint,
)

logger = logging.getLogger(__name__)


def word_value(group: FiniteGroup, word: GroupWord, assignment: Sequence[int]) -> int:
    """The group element a word names under an assignment of its letters."""
    value = group.identity
    for letter, exponent in word:
        if not 1 <= letter <= len(assignment):
            raise IndexOutOfRange(f"y{letter} outside 1..{len(assignment)}")
        element = assignment[letter - 1]
        if exponent == -1:
            element = group.inverse(element)
        value = group.multiply(value, element)
    return value


def _operator(
    rep: FiniteRepresentation, term: ActionTerm, size_x: int, assignment: Sequence[int]
) -> np.ndarray:
    """The matrix L of shape (size_x * dim, dim) with w(alpha, beta) = concat(alpha) @ L.

    Row block i collects the group-algebra elements acting on x_(i+1).
    """
    d, m = rep.dim, rep.modulus
    operator = np.zeros((size_x * d, d), dtype=np.int64)
    for summand in term.summands:
        block = slice((summand.variable - 1) * d, summand.variable * d)
        for coefficient, word in summand.combination:
            matrix = rep.matrix(word_value(rep.group, word, assignment))
            operator[block] = (operator[block] + (coefficient % m) * matrix) % m
    return operator


def _check_point(rep: FiniteRepresentation, point: RepPoint):
    for vector in point.module:
        if len(vector) != rep.dim:
            raise IndexOutOfRange(f"vector {vector} does not have dimension {rep.dim}")
        if any(not 0 <= c < rep.modulus for c in vector):
            raise IndexOutOfRange(f"vector {vector} has an entry outside Z/{rep.modulus}")
    for element in point.group:
        if not 0 <= element < rep.group.order:
            raise IndexOutOfRange(
                f"group element {element} outside 0..{rep.group.order - 1}"
            )


def evaluate_action_term(
    rep: FiniteRepresentation, term: ActionTerm, point: RepPoint
) -> tuple[int, ...]:
    size_x, size_y = len(point.module), len(point.group)
    term.check(size_x, size_y)
    _check_point(rep, point)
    operator = _operator(rep, term, size_x, point.group)
    flat = np.array(point.module, dtype=np.int64).reshape(size_x * rep.dim)
    return tuple(int(c) for c in (flat @ operator) % rep.modulus)


def _split(row: np.ndarray, size_x: int, dim: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(int(c) for c in row[i * dim : (i + 1) * dim]) for i in range(size_x)
    )


def _solutions(
    rep: FiniteRepresentation,
    size_x: int,
    size_y: int,
    terms: Sequence[ActionTerm],
    limits: Limits,
) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """Yields (group assignment, module assignments solving every term) per assignment.

    For a fixed group assignment the action terms are linear in the module
    variables, so each assignment costs one stacked matrix product.
    """
    if size_x < 0 or size_y < 0:
        raise IndexOutOfRange(
            f"variable counts must be non-negative, got {size_x}, {size_y}"
        )
    for term in terms:
        term.check(size_x, size_y)
    d, m = rep.dim, rep.modulus
    limits.check("max_points", m ** (d * size_x) * rep.group.order**size_y)

    vectors = cartesian_power(m, d * size_x).astype(np.int64)
    logger.debug(
        f"solving {len(terms)} action terms over {len(vectors)} module assignments "
        f"and {rep.group.order**size_y} group assignments"
    )
    for assignment in cartesian_power(rep.group.order, size_y):
        beta = tuple(int(g) for g in assignment)
        if terms:
            operators = [_operator(rep, t, size_x, beta) for t in terms]
            stacked = np.concatenate(operators, axis=1)
            solving = ~((vectors @ stacked) % m).any(axis=1)
            yield beta, vectors[solving]
        else:
            yield beta, vectors


def solve_action_system(
    rep: FiniteRepresentation,
    size_x: int,
    size_y: int,
    terms: Sequence[ActionTerm],
    limits: Limits = DEFAULT_LIMITS,
) -> list[RepPoint]:
    """Points (alpha, beta) at which every action term evaluates to zero, sorted."""
    points = [
        RepPoint(_split(row, size_x, rep.dim), beta)
        for beta, rows in _solutions(rep, size_x, size_y, terms, limits)
        for row in rows
    ]
    points.sort()
    logger.info(f"{len(points)} points solve {len(terms)} action terms over {rep.name}")
    return points


def action_closure_membership(
    rep: FiniteRepresentation,
    size_x: int,
    size_y: int,
    terms: Sequence[ActionTerm],
    candidate: ActionTerm,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Whether `candidate` vanishes wherever every term of the system vanishes."""
    candidate.check(size_x, size_y)
    for beta, rows in _solutions(rep, size_x, size_y, terms, limits):
        values = (rows @ _operator(rep, candidate, size_x, beta)) % rep.modulus
        if values.any():
            return False
    return True
