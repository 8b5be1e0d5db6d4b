from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator

import numpy as np

from uageo.algebra.model import FiniteAlgebra
from uageo.errors import IndexOutOfRange
from uageo.terms.core import evaluate_many
from uageo.terms.model import Equation, highest_variable

Point = tuple[int, ...]


def check_points(algebra: FiniteAlgebra, var_count: int, points: Iterable[Point]):
    for point in points:
        if len(point) != var_count:
            raise IndexOutOfRange(f"point {point} does not have {var_count} coordinates")
        for coordinate in point:
            if not 0 <= coordinate < algebra.size:
                raise IndexOutOfRange(
                    f"point {point} is not over the carrier of '{algebra.name}'"
                )


def points_array(points: Iterable[Point], var_count: int) -> np.ndarray:
    rows = list(points)
    return np.array(rows, dtype=np.intp).reshape(len(rows), var_count)


class AlgebraicSetCandidate:
    """A set of points of H^n, kept sorted; algebraic once it equals its closure."""

    def __init__(self, algebra: FiniteAlgebra, var_count: int, points: Iterable[Point]):
        normalized = tuple(sorted({tuple(int(c) for c in p) for p in points}))
        check_points(algebra, var_count, normalized)
        self._algebra = algebra
        self._var_count = var_count
        self._points = normalized

    @property
    def algebra(self) -> FiniteAlgebra:
        return self._algebra

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, point: object) -> bool:
        return point in self.as_set()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraicSetCandidate):
            return NotImplemented
        return (self._algebra, self._var_count, self._points) == (
            other._algebra,
            other._var_count,
            other._points,
        )

    def __hash__(self) -> int:
        return hash((self._algebra, self._var_count, self._points))

    def __repr__(self) -> str:
        space = f"{self._algebra.name}^{self._var_count}"
        return f"AlgebraicSetCandidate({space}, {self._points})"

    def as_set(self) -> frozenset[Point]:
        return frozenset(self._points)


class EquationSystem:
    """A finite system T over x1..x_var_count; duplicate equations collapse."""

    def __init__(self, var_count: int, equations: Iterable[Equation] = ()):
        unique = tuple(dict.fromkeys(equations))
        for equation in unique:
            worst = max(highest_variable(equation.lhs), highest_variable(equation.rhs))
            if worst > var_count:
                raise IndexOutOfRange(
                    f"equation {equation} uses x{worst} beyond {var_count} variables"
                )
        self._var_count = var_count
        self._equations = unique

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    def equations(self) -> tuple[Equation, ...]:
        return self._equations

    def __len__(self) -> int:
        return len(self._equations)

    def __iter__(self) -> Iterator[Equation]:
        return iter(self._equations)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquationSystem):
            return NotImplemented
        return (self._var_count, self._equations) == (other._var_count, other._equations)

    def __hash__(self) -> int:
        return hash((self._var_count, self._equations))

    def __repr__(self) -> str:
        shown = "; ".join(str(e) for e in self._equations)
        return f"EquationSystem(n={self._var_count}, {{{shown}}})"


class ClosurePredicate(ABC):
    """Membership test for an H-closed congruence on W(X).

    The congruence is infinite, so it is carried by a finite set of points whose
    common kernel it is; a pair belongs to it iff both sides agree at every one of
    those points.
    """

    def __init__(self, algebra: FiniteAlgebra, var_count: int):
        self._algebra = algebra
        self._var_count = var_count

    @property
    def algebra(self) -> FiniteAlgebra:
        return self._algebra

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    @abstractmethod
    def identifier(self) -> str:
        """Human-readable identifier for the predicate."""

    @property
    def subpredicates(self) -> list["ClosurePredicate"]:
        """Predicates this one is built from"""
        return []

    @abstractmethod
    def defining_points(self) -> frozenset[Point]:
        """A point set whose kernel is this congruence."""

    @abstractmethod
    def solution_set(self) -> AlgebraicSetCandidate:
        """The algebraic set of all points annihilated by the congruence."""

    def holds(self, pair: Equation) -> bool:
        points = self.defining_points()
        if not points:
            return True
        coordinates = points_array(sorted(points), self._var_count)
        lhs = evaluate_many(pair.lhs, self._algebra, coordinates)
        rhs = evaluate_many(pair.rhs, self._algebra, coordinates)
        return bool(np.array_equal(lhs, rhs))
