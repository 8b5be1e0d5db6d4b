from itertools import combinations

import numpy as np
import pytest

from uageo.algebra.core import (
    Componentwise,
    cartesian_power,
    diagonal,
    direct_product,
    enumerate_homs,
    generate_subalgebra,
    generating_set,
    induced_algebra,
    projection,
    saturate,
)
from uageo.algebra.loader import format_algebra, load_algebra
from uageo.algebra.model import FiniteAlgebra, Homomorphism
from uageo.errors import (
    EmptyCarrier,
    GeneratorsInsufficient,
    ParseError,
    SignatureMismatch,
    SizeLimitExceeded,
    TableError,
)
from uageo.limits import Limits


def test_load_c2(c2):
    assert c2.name == "C2"
    assert c2.size == 2
    assert c2.apply("add", 1, 1) == 0
    assert c2.apply("neg", 1) == 1
    assert c2.apply("e") == 0


def test_tables_are_read_only(c2):
    with pytest.raises(ValueError):
        c2.table("add")[0, 0] = 1


def test_format_round_trip(c3):
    again = load_algebra(format_algebra(c3))
    assert again.name == c3.name
    assert again.signature == c3.signature
    for symbol in c3.signature.names:
        assert np.array_equal(again.table(symbol), c3.table(symbol))


def test_values_may_span_lines():
    text = "algebra Z\nsize 2\nop add 2\n0\n1 1\n0\nop e 0 0\n"
    algebra = load_algebra(text)
    assert algebra.apply("add", 0, 1) == 1
    assert algebra.apply("e") == 0


def test_size_zero_is_rejected():
    with pytest.raises(EmptyCarrier):
        load_algebra("algebra Z\nsize 0\n")


def test_broken_fixture_reports_line(fixtures):
    path = fixtures / "broken.alg"
    with pytest.raises(TableError) as info:
        load_algebra(path.read_text(), "broken.alg")
    assert str(info.value).startswith("broken.alg:5: ")


def test_wrong_entry_count():
    with pytest.raises(TableError) as info:
        load_algebra("algebra Z\nsize 2\nop neg 1\n0 1 0\n")
    assert info.value.line == 3


@pytest.mark.parametrize(
    "text",
    [
        "algebra Z\nsize two\n",
        "algebr Z\nsize 2\n",
        "algebra Z\nsize 2\nop e 0\n0\nop e 0\n0\n",
        "algebra Z\nsize -1\n",
        "algebra Z\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(ParseError):
        load_algebra(text)


def test_constructor_validates_tables(c2):
    with pytest.raises(TableError):
        FiniteAlgebra("X", c2.signature, 2, {"add": np.zeros((2, 2)), "neg": [0, 1]})
    with pytest.raises(TableError):
        FiniteAlgebra("X", c2.signature, 2, {"add": np.zeros(2), "neg": [0, 1], "e": 0})


def test_cartesian_power_order():
    assert cartesian_power(2, 2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert cartesian_power(3, 0).shape == (1, 0)


def test_product_of_one_factor_is_a_copy(c2):
    product = direct_product([c2])
    assert product.size == 2
    assert np.array_equal(product.table("add"), c2.table("add"))


def test_product_of_two_factors(c2, c2_squared):
    assert c2_squared.size == 4
    # (1,0) + (1,1) = (0,1), encoded 2 + 3 = 1
    assert c2_squared.apply("add", 2, 3) == 1
    assert c2_squared.apply("e") == 0


def test_empty_product_needs_signature(c2):
    with pytest.raises(SignatureMismatch):
        direct_product([])
    trivial = direct_product([], signature=c2.signature)
    assert trivial.size == 1
    assert trivial.name == "trivial"


def test_product_respects_cap(c3):
    with pytest.raises(SizeLimitExceeded):
        direct_product([c3, c3, c3], limits=Limits(max_table_entries=100))


def test_product_of_mismatched_signatures(c2, m2):
    with pytest.raises(SignatureMismatch):
        direct_product([c2, m2])


def test_projections_and_diagonal_are_homomorphisms(c2, c2_squared):
    for coordinate in range(2):
        assert projection(c2_squared, [c2, c2], coordinate).preserves()
    embedding = diagonal(c2, 2, c2_squared)
    assert embedding.preserves()
    assert embedding.mapping == (0, 3)


def test_generate_subalgebra(c2, m2):
    assert generate_subalgebra(c2, [1]) == frozenset({0, 1})
    assert generate_subalgebra(m2, [0]) == frozenset({0})
    assert generate_subalgebra(c2, []) == frozenset({0})


def test_generating_set(c3, m2):
    assert generate_subalgebra(c3, generating_set(c3)) == frozenset(range(3))
    assert generating_set(m2) == [0, 1]


def test_saturate_lists_seeds_first(c2):
    rows = saturate(Componentwise(c2.signature, [c2, c2]), [(1, 0)])
    assert rows[0].tolist() == [1, 0]
    assert {tuple(r) for r in rows.tolist()} == {(1, 0), (0, 0)}


def test_saturate_respects_cap(c3):
    operations = Componentwise(c3.signature, [c3, c3])
    with pytest.raises(SizeLimitExceeded):
        saturate(operations, [(1, 0), (0, 1)], Limits(max_subalgebra=5))


def test_induced_algebra_relabels(c2):
    operations = Componentwise(c2.signature, [c2, c2])
    rows = saturate(operations, [(1, 1)])
    induced = induced_algebra("D", operations, rows)
    assert induced.size == 2
    assert induced.apply("add", 0, 0) == induced.apply("e")


def test_homs_c2_c2(c2):
    assert [h.mapping for h in enumerate_homs(c2, c2)] == [(0, 0), (0, 1)]


def test_homs_m2_m2(m2):
    assert [h.mapping for h in enumerate_homs(m2, m2)] == [(0, 0), (0, 1), (1, 1)]


def test_homs_c2_c3(c2, c3):
    assert [h.mapping for h in enumerate_homs(c2, c3)] == [(0, 0)]


def test_generator_search_matches_brute_force(c3, c2_squared):
    brute = enumerate_homs(c2_squared, c3)
    by_generators = enumerate_homs(c2_squared, c3, limits=Limits(max_hom_maps=1))
    assert [h.mapping for h in brute] == [h.mapping for h in by_generators]
    assert all(h.preserves() for h in brute)


def test_explicit_generators_must_generate(c2_squared):
    with pytest.raises(GeneratorsInsufficient):
        enumerate_homs(c2_squared, c2_squared, generators=[1])


def test_preserves_rejects_non_homomorphisms(c2):
    assert not Homomorphism(c2, c2, [1, 0]).preserves()
    with pytest.raises(TableError):
        Homomorphism(c2, c2, [0, 2])


def subsets(size):
    return [set(c) for k in range(size + 1) for c in combinations(range(size), k)]


@pytest.mark.parametrize("name", ["c3", "m2", "c2_squared"])
def test_subalgebra_generation_is_a_closure(name, request):
    algebra = request.getfixturevalue(name)
    generated = {
        frozenset(s): generate_subalgebra(algebra, s) for s in subsets(algebra.size)
    }
    for small, closure in generated.items():
        assert small <= closure
        assert generate_subalgebra(algebra, closure) == closure
        for large, larger_closure in generated.items():
            if small <= large:
                assert closure <= larger_closure


@pytest.mark.parametrize(
    "source, target",
    [
        (s, t)
        for s in ("c2", "c3", "c2_squared")
        for t in ("c2", "c3", "c2_squared")
    ]
    + [("m2", "m2")],
)
def test_both_hom_searches_agree(source, target, request):
    source, target = request.getfixturevalue(source), request.getfixturevalue(target)
    brute = enumerate_homs(source, target)
    by_generators = enumerate_homs(source, target, limits=Limits(max_hom_maps=1))
    assert [h.mapping for h in brute] == [h.mapping for h in by_generators]
    assert all(h.preserves() for h in by_generators)
