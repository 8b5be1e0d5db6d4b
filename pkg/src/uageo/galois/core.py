import logging
import re
from collections.abc import Iterable

import numpy as np

from uageo.algebra.core import (
    Componentwise,
    cartesian_power,
    enumerate_homs,
    induced_algebra,
    saturate,
)
from uageo.algebra.model import FiniteAlgebra
from uageo.errors import IndexOutOfRange, InputError, ParseError, SizeLimitExceeded
from uageo.galois.model import (
    AlgebraicSetCandidate,
    EquationSystem,
    Point,
    check_points,
    points_array,
)
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.terms.core import evaluate, evaluate_many, substitute
from uageo.terms.model import Equation, Substitution

logger = logging.getLogger(__name__)

_POINT = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)")


def _require_variables(var_count: int):
    if var_count < 1:
        raise IndexOutOfRange(
            f"affine spaces need at least one variable, got {var_count}"
        )


def all_points(
    algebra: FiniteAlgebra, var_count: int, limits: Limits = DEFAULT_LIMITS
) -> np.ndarray:
    """Every point of H^n as a row, in lexicographic order."""
    _require_variables(var_count)
    limits.check("max_points", algebra.size**var_count)
    return cartesian_power(algebra.size, var_count)


def solution_mask(
    algebra: FiniteAlgebra, points: np.ndarray, equations: Iterable[Equation]
) -> np.ndarray:
    mask = np.ones(points.shape[0], dtype=bool)
    for equation in equations:
        mask &= evaluate_many(equation.lhs, algebra, points) == evaluate_many(
            equation.rhs, algebra, points
        )
    return mask


def solve_system(
    algebra: FiniteAlgebra,
    var_count: int,
    system: EquationSystem,
    limits: Limits = DEFAULT_LIMITS,
) -> AlgebraicSetCandidate:
    """T': every point at which all equations of the system hold."""
    if system.var_count != var_count:
        raise IndexOutOfRange(
            f"system is over {system.var_count} variables, expected {var_count}"
        )
    points = all_points(algebra, var_count, limits)
    mask = solution_mask(algebra, points, system)
    logger.debug(f"{len(system)} equations over {algebra.name}^{var_count}: "
                 f"{int(mask.sum())} of {points.shape[0]} points")
    solutions = tuple(map(tuple, points[mask].tolist()))
    return AlgebraicSetCandidate(algebra, var_count, solutions)


def congruence_membership(
    algebra: FiniteAlgebra, var_count: int, points: Iterable[Point], pair: Equation
) -> bool:
    """Whether the pair lies in A', i.e. holds at every point of A."""
    rows = sorted(set(points))
    check_points(algebra, var_count, rows)
    if not rows:
        return True
    coordinates = points_array(rows, var_count)
    return bool(
        np.array_equal(
            evaluate_many(pair.lhs, algebra, coordinates),
            evaluate_many(pair.rhs, algebra, coordinates),
        )
    )


def system_closure_membership(
    algebra: FiniteAlgebra,
    var_count: int,
    system: EquationSystem,
    pair: Equation,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Whether the pair lies in T'', i.e. the quasi-identity T => pair holds in H."""
    solutions = solve_system(algebra, var_count, system, limits)
    return congruence_membership(algebra, var_count, solutions.points, pair)


def _diagonal_generators(points: list[Point], var_count: int) -> list[Point]:
    """g_i = (mu(x_i))_{mu in A}, one coordinate per point of A."""
    return [tuple(point[i] for point in points) for i in range(var_count)]


def _closure_by_diagonal(
    algebra: FiniteAlgebra, var_count: int, points: list[Point], limits: Limits
) -> set[Point] | None:
    operations = Componentwise(algebra.signature, [algebra] * len(points))
    generators = _diagonal_generators(points, var_count)
    rows = saturate(operations, generators, limits)
    try:
        coordinate = induced_algebra(f"D({algebra.name})", operations, rows, limits)
    except SizeLimitExceeded as err:
        logger.warning(f"coordinate algebra of size {rows.shape[0]} too large: {err}")
        return None

    index = {row: i for i, row in enumerate(map(tuple, rows.tolist()))}
    labels = [index[g] for g in generators]
    homs = enumerate_homs(coordinate, algebra, generators=labels, limits=limits)
    logger.debug(f"coordinate algebra of size {coordinate.size}, {len(homs)} homs")
    return {tuple(h(label) for label in labels) for h in homs}


def _closure_by_graphs(
    algebra: FiniteAlgebra, var_count: int, points: list[Point], limits: Limits
) -> set[Point]:
    """A'' point by point: nu is in A'' iff g_i -> nu_i extends to a hom D -> H.

    That holds iff the subalgebra of H^A x H generated by the (g_i, nu_i) is the
    graph of a function, which needs no table for H^A.
    """
    operations = Componentwise(algebra.signature, [algebra] * (len(points) + 1))
    generators = _diagonal_generators(points, var_count)
    closure: set[Point] = set()
    for candidate in all_points(algebra, var_count, limits).tolist():
        seeds = [(*g, nu) for g, nu in zip(generators, candidate, strict=True)]
        graph = saturate(operations, seeds, limits)
        prefixes = {tuple(row[:-1]) for row in graph.tolist()}
        if len(prefixes) == graph.shape[0]:
            closure.add(tuple(candidate))
    return closure


def closure_of_set(
    algebra: FiniteAlgebra,
    var_count: int,
    points: Iterable[Point],
    limits: Limits = DEFAULT_LIMITS,
) -> AlgebraicSetCandidate:
    """A'', the least algebraic set containing the given points.

    The points are read as the coordinates of the subalgebra D of H^A generated by
    the tuples g_i; A'' is the set of images (h(g_1), ..., h(g_n)) over all
    homomorphisms h: D -> H. For A empty, H^A is the one-element algebra.
    """
    _require_variables(var_count)
    rows = sorted(set(points))
    check_points(algebra, var_count, rows)

    closure: set[Point] | None = None
    if algebra.size ** len(rows) <= limits.max_diagonal:
        closure = _closure_by_diagonal(algebra, var_count, rows, limits)
    else:
        logger.warning(
            f"{algebra.name}^{len(rows)} exceeds the diagonal cap, checking points one "
            "by one"
        )
    if closure is None:
        closure = _closure_by_graphs(algebra, var_count, rows, limits)
    return AlgebraicSetCandidate(algebra, var_count, tuple(closure))


def is_algebraic(
    algebra: FiniteAlgebra,
    var_count: int,
    points: Iterable[Point],
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    given = set(points)
    return closure_of_set(algebra, var_count, given, limits).as_set() == given


def coordinate_algebra(
    algebra: FiniteAlgebra,
    var_count: int,
    points: Iterable[Point],
    limits: Limits = DEFAULT_LIMITS,
) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """The subalgebra of H^A generated by the coordinate tuples, with their labels.

    It is a copy of W(X)/A', so it lies in SC(H).
    """
    _require_variables(var_count)
    rows = sorted(set(points))
    check_points(algebra, var_count, rows)
    limits.check("max_diagonal", algebra.size ** len(rows))
    operations = Componentwise(algebra.signature, [algebra] * len(rows))
    generators = _diagonal_generators(rows, var_count)
    elements = saturate(operations, generators, limits)
    coordinate = induced_algebra(f"W/A'({algebra.name})", operations, elements, limits)
    index = {row: i for i, row in enumerate(map(tuple, elements.tolist()))}
    return coordinate, tuple(index[g] for g in generators)


def apply_substitution_to_point(
    substitution: Substitution, algebra: FiniteAlgebra, point: Point
) -> Point:
    """s~(nu): coordinate j is the image of y_j evaluated at nu."""
    if len(point) != substitution.target_count:
        raise IndexOutOfRange(
            f"point {point} does not have {substitution.target_count} coordinates"
        )
    return tuple(evaluate(image, algebra, point) for image in substitution.images)


def pull_back(equation: Equation, substitution: Substitution) -> Equation:
    return Equation(
        substitute(equation.lhs, substitution), substitute(equation.rhs, substitution)
    )


def pullback_membership(
    algebra: FiniteAlgebra,
    substitution: Substitution,
    system: EquationSystem,
    pair: Equation,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Whether a pair over Y lies in s^{-1}(T'')."""
    if system.var_count != substitution.target_count:
        raise IndexOutOfRange(
            f"system is over {system.var_count} variables but the substitution lands "
            f"in {substitution.target_count}"
        )
    return system_closure_membership(
        algebra, substitution.target_count, system, pull_back(pair, substitution), limits
    )


def image_closure(
    algebra: FiniteAlgebra,
    substitution: Substitution,
    points: Iterable[Point],
    limits: Limits = DEFAULT_LIMITS,
) -> AlgebraicSetCandidate:
    """Closure over Y of the image of a point set under s~."""
    image = {apply_substitution_to_point(substitution, algebra, p) for p in points}
    return closure_of_set(algebra, substitution.source_count, image, limits)


def is_morphism(
    algebra: FiniteAlgebra,
    substitution: Substitution,
    source: Iterable[Point],
    target: Iterable[Point],
) -> bool:
    """Whether s~ maps the first set into the second."""
    allowed = set(target)
    return all(
        apply_substitution_to_point(substitution, algebra, p) in allowed for p in source
    )


def parse_points(
    text: str, algebra: FiniteAlgebra, var_count: int, source: str | None = None
) -> list[Point]:
    """Reads a point set: one "(a1,...,an)" per line, '#' comments allowed."""
    points: list[Point] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        match = _POINT.fullmatch(content)
        try:
            if match is None:
                raise ParseError(f"expected a point like (0,1), got '{content}'")
            body = match.group(1)
            point = tuple(int(v) for v in body.split(",")) if body else ()
            check_points(algebra, var_count, [point])
        except InputError as err:
            raise err.at(source, line_number) from None
        points.append(point)
    return points


def format_point(point: Point) -> str:
    return "(" + ",".join(str(c) for c in point) + ")"


def format_points(points: Iterable[Point]) -> str:
    return "".join(format_point(p) + "\n" for p in sorted(points))
