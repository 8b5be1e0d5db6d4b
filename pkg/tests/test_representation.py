import random

import numpy as np
import pytest

from uageo.algebra.core import cartesian_power
from uageo.errors import (
    ActionNotHomomorphic,
    GroupAxiomViolation,
    IndexOutOfRange,
    ParseError,
    SizeLimitExceeded,
    TableError,
)
from uageo.limits import Limits
from uageo.representation.core import (
    action_closure_membership,
    evaluate_action_term,
    solve_action_system,
    word_value,
)
from uageo.representation.loader import (
    format_representation,
    load_group,
    load_representation,
)
from uageo.representation.model import FiniteGroup, FiniteRepresentation, RepPoint
from uageo.representation.terms import (
    format_action_term,
    parse_action_system,
    parse_action_term,
)


def point(vectors, elements):
    return RepPoint(tuple(tuple(v) for v in vectors), tuple(elements))


def test_load_representation(sign_rep, regular_rep3):
    assert (sign_rep.modulus, sign_rep.dim, sign_rep.group.order) == (2, 1, 2)
    assert regular_rep3.name == "C2reg3"
    assert regular_rep3.matrix(1).tolist() == [[0, 1], [1, 0]]
    assert regular_rep3.module_size == 9


def test_action_must_be_a_homomorphism(fixtures):
    path = fixtures / "bad.rep"
    with pytest.raises(ActionNotHomomorphic) as info:
        load_representation(path.read_text(), "bad.rep")
    assert info.value.line == 8
    assert str(info.value).startswith("bad.rep:8: ")


def test_format_representation_round_trip(regular_rep3):
    again = load_representation(format_representation(regular_rep3))
    assert again.name == regular_rep3.name
    assert again.modulus == 3
    assert np.array_equal(again.action, regular_rep3.action)
    assert np.array_equal(again.group.table, regular_rep3.group.table)


@pytest.mark.parametrize(
    "text, error",
    [
        ("rep R\nmodulus 1\ndim 1\ngroup 1\n0\naction\n0\n", ParseError),
        ("rep R\nmodulus 2\ndim -1\ngroup 1\n0\naction\n", ParseError),
        ("rep R\nmodulus 2\ndim 1\ngroup 1\n0\naction\n1 1\n", ParseError),
        ("rep R\nmodulus 2\ndim 1\ngroup 1\n0\naction\n2\n", TableError),
        ("rep R\nmodulus 2\ndim 1\ngroup 1\n0\naction\n0\n", ActionNotHomomorphic),
        (
            "rep R\nmodulus 2\ndim 1\ngroup 2\n0 1\n1 1\naction\n1\n1\n",
            GroupAxiomViolation,
        ),
    ],
)
def test_malformed_representations(text, error):
    with pytest.raises(error):
        load_representation(text)


def test_load_group(cyclic2):
    assert cyclic2.order == 2
    assert cyclic2.identity == 0
    assert cyclic2.inverse(1) == 1


def test_group_axioms_are_checked():
    with pytest.raises(GroupAxiomViolation) as info:
        load_group("group 2\n0 1\n1 1\n", "g.grp")
    assert str(info.value).startswith("g.grp:1: ")
    with pytest.raises(TableError) as info:
        load_group("group 2\n0 1\n1 2\n")
    assert info.value.line == 3
    with pytest.raises(GroupAxiomViolation):
        FiniteGroup(np.zeros((2, 2), dtype=np.intp))
    with pytest.raises(GroupAxiomViolation):
        FiniteGroup(np.zeros((2, 3)))


def test_non_associative_table_is_rejected():
    # a Latin square with identity 0 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupAxiomViolation):
        FiniteGroup(np.array(table))


def test_trivial_group():
    trivial = FiniteGroup.trivial()
    assert trivial.order == 1
    assert trivial.multiply(0, 0) == 0


def test_word_value(cyclic2):
    assert word_value(cyclic2, (), [1]) == 0
    assert word_value(cyclic2, ((1, 1), (1, -1)), [1]) == 0
    assert word_value(cyclic2, ((1, 1), (2, 1)), [1, 0]) == 1
    with pytest.raises(IndexOutOfRange):
        word_value(cyclic2, ((2, 1),), [1])


def test_parse_action_term():
    term = parse_action_term("x1 * (y1 - 1) + x2 * 2 y1^-1", 2, 1)
    assert term.summands[0].combination == ((1, ((1, 1),)), (-1, ()))
    assert term.summands[1].combination == ((2, ((1, -1),)),)
    assert format_action_term(term) == "x1 * (y1 - 1) + x2 * (2 y1^-1)"


def test_bare_variable_and_integer_multiples():
    term = parse_action_term("x1 - x2 * 3", 2, 0)
    assert term.summands[0].combination == ((1, ()),)
    assert term.summands[1].combination == ((-3, ()),)


@pytest.mark.parametrize(
    "text", ["x1 * y1 - x1", "-x1 * (y1 y2 - 2 1)", "x2 + x1 * (-y2^-1 + 3 y1)"]
)
def test_format_then_parse_is_stable(text):
    term = parse_action_term(text, 2, 2)
    assert parse_action_term(format_action_term(term), 2, 2) == term


@pytest.mark.parametrize(
    "text, error",
    [
        ("x1 *", ParseError),
        ("y1", ParseError),
        ("x1 * (y1", ParseError),
        ("x1 $ x2", ParseError),
        ("x1 x2", ParseError),
        ("x3", IndexOutOfRange),
        ("x1 * y2", IndexOutOfRange),
    ],
)
def test_action_term_errors(text, error):
    with pytest.raises(error):
        parse_action_term(text, 2, 1)


def test_action_system_file(fixtures):
    terms = parse_action_system((fixtures / "fixed.act").read_text(), 1, 1)
    assert terms == [parse_action_term("x1 * y1 - x1", 1, 1)]
    with pytest.raises(IndexOutOfRange) as info:
        parse_action_system("x1\n# fine\nx1 * y2\n", 1, 1, source="t.act")
    assert str(info.value).startswith("t.act:3: ")


def test_evaluate_action_term(regular_rep3):
    swap_minus_one = parse_action_term("x1 * (y1 - 1)", 1, 1)
    moved = point([(1, 0)], [1])
    assert evaluate_action_term(regular_rep3, swap_minus_one, moved) == (2, 1)
    fixed = point([(1, 0)], [0])
    assert evaluate_action_term(regular_rep3, swap_minus_one, fixed) == (0, 0)
    double = parse_action_term("x1 * 2", 1, 0)
    assert evaluate_action_term(regular_rep3, double, point([(1, 0)], [])) == (2, 0)
    mixed = parse_action_term("x1 + x2 * y1^-1", 2, 1)
    at = point([(1, 0), (0, 1)], [1])
    assert evaluate_action_term(regular_rep3, mixed, at) == (2, 0)


def test_evaluate_checks_points(regular_rep3):
    term = parse_action_term("x1", 1, 0)
    with pytest.raises(IndexOutOfRange):
        evaluate_action_term(regular_rep3, term, point([(1, 0, 0)], []))
    with pytest.raises(IndexOutOfRange):
        evaluate_action_term(regular_rep3, term, point([(3, 0)], []))
    with pytest.raises(IndexOutOfRange):
        evaluate_action_term(regular_rep3, term, point([(1, 0)], [2]))


def test_large_coefficients_reduce_mod_m(regular_rep3):
    at = point([(1, 0)], [0])
    # 2**62 + 2**62 = 2**63, which is 2 mod 3
    half = 2**62
    doubled = parse_action_term(f"x1 * ({half} 1 + {half} 1)", 1, 1)
    assert evaluate_action_term(regular_rep3, doubled, at) == (2, 0)
    huge = parse_action_term("x1 * 100000000000000000001", 1, 0)
    assert evaluate_action_term(regular_rep3, huge, point([(1, 0)], [])) == (2, 0)
    assert solve_action_system(regular_rep3, 1, 0, [huge]) == solve_action_system(
        regular_rep3, 1, 0, [parse_action_term("x1 * 2", 1, 0)]
    )


def test_evaluation_is_linear_in_the_module(regular_rep3):
    rng = random.Random(4)
    term = parse_action_term("x1 * (y1 - 2 y2) + x2 * (y1 y2^-1 + 1)", 2, 2)
    for _ in range(50):
        beta = [rng.randrange(2) for _ in range(2)]
        first = [[rng.randrange(3) for _ in range(2)] for _ in range(2)]
        second = [[rng.randrange(3) for _ in range(2)] for _ in range(2)]
        total = [
            [(a + b) % 3 for a, b in zip(u, v, strict=True)]
            for u, v in zip(first, second, strict=True)
        ]
        left = evaluate_action_term(regular_rep3, term, point(first, beta))
        right = evaluate_action_term(regular_rep3, term, point(second, beta))
        combined = evaluate_action_term(regular_rep3, term, point(total, beta))
        assert combined == tuple((a + b) % 3 for a, b in zip(left, right, strict=True))


def brute_force(rep, size_x, size_y, terms):
    found = []
    vectors = cartesian_power(rep.modulus, rep.dim * size_x).tolist()
    for beta in cartesian_power(rep.group.order, size_y).tolist():
        for flat in vectors:
            vectors_of = [flat[i * rep.dim : (i + 1) * rep.dim] for i in range(size_x)]
            candidate = point(vectors_of, beta)
            values = [evaluate_action_term(rep, t, candidate) for t in terms]
            if all(not any(v) for v in values):
                found.append(candidate)
    return sorted(found)


def test_solve_fixed_vectors(regular_rep2):
    terms = [parse_action_term("x1 * y1 - x1", 1, 1)]
    solutions = solve_action_system(regular_rep2, 1, 1, terms)
    assert len(solutions) == 6
    assert solutions == brute_force(regular_rep2, 1, 1, terms)
    assert point([(1, 0)], [1]) not in solutions


def test_solve_matches_brute_force(regular_rep3, sign_rep):
    systems = [
        (regular_rep3, 1, 1, ["x1 * (y1 + 1)"]),
        (regular_rep3, 2, 1, ["x1 - x2 * y1", "x1 * (1 - y1)"]),
        (sign_rep, 2, 2, ["x1 * y1 y2 + x2"]),
    ]
    for rep, size_x, size_y, lines in systems:
        terms = [parse_action_term(line, size_x, size_y) for line in lines]
        assert solve_action_system(rep, size_x, size_y, terms) == brute_force(
            rep, size_x, size_y, terms
        )


def test_empty_system_is_everything(regular_rep2):
    assert len(solve_action_system(regular_rep2, 1, 1, [])) == 8


def test_zero_vectors_always_solve(regular_rep3):
    terms = [parse_action_term("x1 * (y1 + 2) - x2", 2, 1)]
    solutions = solve_action_system(regular_rep3, 2, 1, terms)
    for beta in range(2):
        assert point([(0, 0), (0, 0)], [beta]) in solutions


def test_solve_respects_point_cap(regular_rep2):
    with pytest.raises(SizeLimitExceeded):
        solve_action_system(regular_rep2, 1, 1, [], Limits(max_points=4))


def test_closure_membership(regular_rep2):
    fixed = [parse_action_term("x1 * y1 - x1", 1, 1)]
    assert action_closure_membership(
        regular_rep2, 1, 1, fixed, parse_action_term("x1 * (y1 + 1)", 1, 1)
    )
    assert not action_closure_membership(
        regular_rep2, 1, 1, fixed, parse_action_term("x1", 1, 1)
    )
    # with no equations only the zero term follows
    assert not action_closure_membership(
        regular_rep2, 1, 1, [], parse_action_term("x1 * y1 - x1", 1, 1)
    )


def test_zero_dimensional_module(cyclic2):
    rep = FiniteRepresentation("Z", 2, cyclic2, np.zeros((2, 0, 0), dtype=np.int64))
    assert rep.dim == 0
    terms = [parse_action_term("x1 * y1", 1, 1)]
    assert solve_action_system(rep, 1, 1, terms) == [point([()], [0]), point([()], [1])]
