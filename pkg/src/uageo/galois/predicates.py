from collections.abc import Iterable, Sequence
from functools import cached_property
from typing import override

from uageo.algebra.model import FiniteAlgebra
from uageo.errors import IndexOutOfRange, SignatureMismatch
from uageo.galois.core import (
    apply_substitution_to_point,
    closure_of_set,
    image_closure,
    pull_back,
    solve_system,
)
from uageo.galois.model import (
    AlgebraicSetCandidate,
    ClosurePredicate,
    EquationSystem,
    Point,
    check_points,
)
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.terms.model import Equation, Substitution, format_term


class KernelPredicate(ClosurePredicate):
    """A' for a set of points A."""

    def __init__(
        self,
        algebra: FiniteAlgebra,
        var_count: int,
        points: Iterable[Point],
        limits: Limits = DEFAULT_LIMITS,
    ):
        super().__init__(algebra, var_count)
        self._points = frozenset(points)
        check_points(algebra, var_count, self._points)
        self._limits = limits

    @property
    @override
    def identifier(self) -> str:
        space = f"{self.algebra.name}^{self.var_count}"
        return f"kernel of {len(self._points)} points of {space}"

    @override
    def defining_points(self) -> frozenset[Point]:
        return self._points

    @override
    def solution_set(self) -> AlgebraicSetCandidate:
        return self._closure

    @cached_property
    def _closure(self) -> AlgebraicSetCandidate:
        return closure_of_set(self.algebra, self.var_count, self._points, self._limits)


class SystemClosurePredicate(ClosurePredicate):
    """T'' for a finite system T."""

    def __init__(
        self,
        algebra: FiniteAlgebra,
        system: EquationSystem,
        limits: Limits = DEFAULT_LIMITS,
    ):
        super().__init__(algebra, system.var_count)
        self._system = system
        self._limits = limits

    @property
    def system(self) -> EquationSystem:
        return self._system

    @property
    @override
    def identifier(self) -> str:
        return f"closure of {len(self._system)} equations over {self.algebra.name}"

    @override
    def defining_points(self) -> frozenset[Point]:
        return self._solutions.as_set()

    @override
    def solution_set(self) -> AlgebraicSetCandidate:
        return self._solutions

    @cached_property
    def _solutions(self) -> AlgebraicSetCandidate:
        return solve_system(self.algebra, self.var_count, self._system, self._limits)


class PullbackPredicate(ClosurePredicate):
    """s^{-1} of another closed congruence: w ~ w' iff w^s ~ w'^s there."""

    def __init__(
        self,
        inner: ClosurePredicate,
        substitution: Substitution,
        limits: Limits = DEFAULT_LIMITS,
    ):
        if substitution.target_count != inner.var_count:
            raise IndexOutOfRange(
                f"substitution lands in {substitution.target_count} variables, "
                f"predicate is over {inner.var_count}"
            )
        super().__init__(inner.algebra, substitution.source_count)
        self._inner = inner
        self._substitution = substitution
        self._limits = limits

    @property
    @override
    def identifier(self) -> str:
        images = ", ".join(format_term(t) for t in self._substitution.images)
        return f"pullback of ({self._inner.identifier}) along [{images}]"

    @property
    @override
    def subpredicates(self) -> list[ClosurePredicate]:
        return [self._inner]

    @override
    def holds(self, pair: Equation) -> bool:
        return self._inner.holds(pull_back(pair, self._substitution))

    @override
    def defining_points(self) -> frozenset[Point]:
        return frozenset(
            apply_substitution_to_point(self._substitution, self.algebra, p)
            for p in self._inner.defining_points()
        )

    @override
    def solution_set(self) -> AlgebraicSetCandidate:
        return self._closure

    @cached_property
    def _closure(self) -> AlgebraicSetCandidate:
        return image_closure(
            self.algebra, self._substitution, self._inner.defining_points(), self._limits
        )


class IntersectionPredicate(ClosurePredicate):
    """Meet of closed congruences on one W(X); its points are the union of theirs."""

    def __init__(
        self, parts: Sequence[ClosurePredicate], limits: Limits = DEFAULT_LIMITS
    ):
        if not parts:
            raise IndexOutOfRange("an intersection needs at least one predicate")
        first = parts[0]
        for part in parts[1:]:
            if part.algebra is not first.algebra:
                raise SignatureMismatch("intersected predicates use different algebras")
            if part.var_count != first.var_count:
                raise IndexOutOfRange("intersected predicates use different variables")
        super().__init__(first.algebra, first.var_count)
        self._parts = list(parts)
        self._limits = limits

    @property
    @override
    def identifier(self) -> str:
        return "(" + ") and (".join(p.identifier for p in self._parts) + ")"

    @property
    @override
    def subpredicates(self) -> list[ClosurePredicate]:
        return list(self._parts)

    @override
    def holds(self, pair: Equation) -> bool:
        return all(part.holds(pair) for part in self._parts)

    @override
    def defining_points(self) -> frozenset[Point]:
        return frozenset().union(*(p.defining_points() for p in self._parts))

    @override
    def solution_set(self) -> AlgebraicSetCandidate:
        return self._closure

    @cached_property
    def _closure(self) -> AlgebraicSetCandidate:
        return closure_of_set(
            self.algebra, self.var_count, self.defining_points(), self._limits
        )
