import random
from itertools import combinations

import pytest

from uageo.galois.catalog import TermCatalog
from uageo.galois.core import (
    all_points,
    closure_of_set,
    congruence_membership,
    image_closure,
    is_algebraic,
    pullback_membership,
    solve_system,
    system_closure_membership,
)
from uageo.galois.model import EquationSystem
from uageo.galois.oracle import (
    oracle_closure,
    oracle_is_algebraic,
    oracle_least_algebraic_superset,
)
from uageo.terms.core import compose, evaluate, substitute
from uageo.terms.model import Equation, Substitution

SPACES = [("C2", 1), ("C2", 2), ("C3", 1), ("C3", 2), ("M2", 1), ("M2", 2)]


def subsets(points):
    for size in range(len(points) + 1):
        yield from (frozenset(c) for c in combinations(points, size))


@pytest.fixture(scope="module", params=SPACES, ids=lambda s: f"{s[0]}^{s[1]}")
def space(request, algebras):
    name, var_count = request.param
    algebra = algebras[name]
    points = [tuple(p) for p in all_points(algebra, var_count).tolist()]
    closures = {
        subset: closure_of_set(algebra, var_count, subset).as_set()
        for subset in subsets(points)
    }
    return algebra, var_count, points, closures


@pytest.fixture(scope="module")
def catalogs(algebras):
    return {
        (name, n): TermCatalog([algebra], n, 2)
        for name, algebra in algebras.items()
        for n in (1, 2)
    }


def test_closure_is_extensive(space):
    _, _, _, closures = space
    for subset, closure in closures.items():
        assert subset <= closure


def test_closure_is_idempotent(space):
    algebra, var_count, _, closures = space
    for closure in set(closures.values()):
        assert closures[closure] == closure
        assert is_algebraic(algebra, var_count, closure)


def test_closure_is_monotone(space):
    _, _, points, closures = space
    for subset, closure in closures.items():
        for point in points:
            assert closure <= closures[subset | {point}]


def test_closure_matches_pair_oracle(space):
    algebra, var_count, _, closures = space
    catalog = TermCatalog([algebra], var_count, 3)
    for subset, closure in closures.items():
        assert oracle_closure(catalog, subset) == closure
        assert oracle_is_algebraic(catalog, subset) == (subset == closure)


def test_closure_is_least_algebraic_superset(space):
    algebra, var_count, _, closures = space
    catalog = TermCatalog([algebra], var_count, 2)
    for subset, closure in closures.items():
        assert oracle_least_algebraic_superset(catalog, subset) == closure


def random_system(rng, catalog, size):
    pairs = list(catalog.pairs())
    chosen = rng.sample(pairs, min(size, len(pairs)))
    return EquationSystem(catalog.var_count, tuple(chosen))


def holds_everywhere(algebra, points, pair):
    return all(
        evaluate(pair.lhs, algebra, p) == evaluate(pair.rhs, algebra, p) for p in points
    )


@pytest.mark.parametrize("name", ["C2", "C3", "M2"])
def test_system_closure_is_the_quasi_identity(name, algebras, catalogs):
    rng = random.Random(12)
    algebra = algebras[name]
    for _ in range(200):
        n = rng.choice((1, 2))
        catalog = catalogs[(name, n)]
        system = random_system(rng, catalog, rng.randint(0, 3))
        pairs = list(catalog.pairs())
        if not pairs:
            continue
        pair = rng.choice(pairs)
        everywhere = [tuple(p) for p in all_points(algebra, n).tolist()]
        solutions = [
            p
            for p in everywhere
            if all(holds_everywhere(algebra, [p], e) for e in system)
        ]
        expected = holds_everywhere(algebra, solutions, pair)
        assert system_closure_membership(algebra, n, system, pair) == expected


def random_substitution(rng, catalog, source_count):
    images = [rng.choice(catalog.terms) for _ in range(source_count)]
    return Substitution.of(catalog.var_count, images)


def test_pullback_is_closed(algebras, catalogs):
    rng = random.Random(5)
    names = sorted(algebras)
    for _ in range(100):
        name = rng.choice(names)
        algebra = algebras[name]
        x_count, y_count = rng.choice((1, 2)), rng.choice((1, 2))
        system = random_system(rng, catalogs[(name, x_count)], rng.randint(0, 2))
        substitution = random_substitution(rng, catalogs[(name, x_count)], y_count)
        solutions = solve_system(algebra, x_count, system).points
        image = image_closure(algebra, substitution, solutions)
        assert is_algebraic(algebra, y_count, image.points)
        for pair in catalogs[(name, y_count)].pairs():
            member = pullback_membership(algebra, substitution, system, pair)
            assert member == congruence_membership(algebra, y_count, image.points, pair)


def test_pullback_is_functorial(algebras, catalogs):
    rng = random.Random(9)
    names = sorted(algebras)
    for _ in range(100):
        name = rng.choice(names)
        algebra = algebras[name]
        x_count, y_count, z_count = (rng.choice((1, 2)) for _ in range(3))
        system = random_system(rng, catalogs[(name, x_count)], rng.randint(0, 2))
        outer = random_substitution(rng, catalogs[(name, x_count)], y_count)
        inner = random_substitution(rng, catalogs[(name, y_count)], z_count)
        composite = compose(outer, inner)
        for pair in catalogs[(name, z_count)].pairs():
            stepwise = Equation(substitute(pair.lhs, inner), substitute(pair.rhs, inner))
            assert pullback_membership(
                algebra, composite, system, pair
            ) == pullback_membership(algebra, outer, system, stepwise)


def test_substitution_commutes_with_evaluation(algebras, catalogs):
    rng = random.Random(3)
    for name, algebra in sorted(algebras.items()):
        for _ in range(30):
            substitution = random_substitution(rng, catalogs[(name, 2)], 2)
            term = rng.choice(catalogs[(name, 2)].terms)
            point = tuple(rng.randrange(algebra.size) for _ in range(2))
            moved = tuple(evaluate(t, algebra, point) for t in substitution.images)
            assert evaluate(substitute(term, substitution), algebra, point) == evaluate(
                term, algebra, moved
            )


def test_both_derivations_are_antitone(algebras, catalogs):
    rng = random.Random(17)
    for (name, n), catalog in catalogs.items():
        algebra = algebras[name]
        points = [tuple(p) for p in all_points(algebra, n).tolist()]
        pairs = list(catalog.pairs())
        for _ in range(20):
            larger = frozenset(rng.sample(points, rng.randint(0, len(points))))
            smaller = frozenset(p for p in larger if rng.random() < 0.5)
            for pair in rng.sample(pairs, min(len(pairs), 30)):
                if congruence_membership(algebra, n, larger, pair):
                    assert congruence_membership(algebra, n, smaller, pair)

            chosen = rng.sample(pairs, min(len(pairs), rng.randint(0, 4)))
            fewer = EquationSystem(n, tuple(chosen[: len(chosen) // 2]))
            more = EquationSystem(n, tuple(chosen))
            assert (
                solve_system(algebra, n, more).as_set()
                <= solve_system(algebra, n, fewer).as_set()
            )


def test_adding_a_consequence_keeps_the_solutions(algebras, catalogs):
    rng = random.Random(23)
    for (name, n), catalog in catalogs.items():
        algebra = algebras[name]
        pairs = list(catalog.pairs())
        for _ in range(15):
            system = EquationSystem(
                n, tuple(rng.sample(pairs, min(len(pairs), rng.randint(0, 3))))
            )
            solutions = solve_system(algebra, n, system).as_set()
            for pair in rng.sample(pairs, min(len(pairs), 20)):
                if not system_closure_membership(algebra, n, system, pair):
                    continue
                extended = EquationSystem(n, (*system.equations, pair))
                assert solve_system(algebra, n, extended).as_set() == solutions
