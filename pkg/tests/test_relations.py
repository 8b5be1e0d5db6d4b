import random

import pytest

import uageo.relations.core as relations
from uageo.algebra.core import direct_product
from uageo.errors import (
    CriteriaConflict,
    IndexOutOfRange,
    InputError,
    SignatureMismatch,
    SizeLimitExceeded,
)
from uageo.galois.catalog import TermCatalog
from uageo.galois.core import all_points, solve_system
from uageo.galois.model import EquationSystem
from uageo.lattice.core import enumerate_closed_sets
from uageo.limits import Limits
from uageo.relations.core import (
    check_quasi_identity,
    cross_check_equivalence,
    geom_equivalent_bounded,
    identities_up_to,
    reduce_for_consequence,
    reduce_system,
    separation_equivalence,
)
from uageo.relations.model import EquivalenceStatus, QuasiIdentity, SeparationReport
from uageo.terms.core import evaluate
from uageo.terms.parser import parse_equation


def equation(algebra, text, var_count):
    return parse_equation(text, algebra.signature, var_count)


def test_identities_use_later_earlier_orientation(c2, m2):
    assert equation(c2, "(add x1 x1) = e", 1) in identities_up_to(c2, 1, 2)
    found = identities_up_to(m2, 2, 1)
    assert equation(m2, "(meet x2 x1) = (meet x1 x2)", 2) in found
    assert equation(m2, "(meet x1 x1) = x1", 2) in found
    assert equation(m2, "(meet x1 x2) = (meet x2 x1)", 2) not in found


@pytest.mark.parametrize("name", ["C2", "C3", "M2"])
def test_identities_hold_everywhere(name, algebras):
    algebra = algebras[name]
    points = [tuple(p) for p in all_points(algebra, 2).tolist()]
    identities = identities_up_to(algebra, 2, 1)
    assert identities
    for identity in identities:
        for point in points:
            lhs = evaluate(identity.lhs, algebra, point)
            assert lhs == evaluate(identity.rhs, algebra, point)


def test_identities_respect_cap(c2):
    with pytest.raises(SizeLimitExceeded):
        identities_up_to(c2, 1, 2, Limits(max_pairs=1))


def test_quasi_identities(c2, m2):
    diagonal = QuasiIdentity(
        2, (equation(c2, "x1 = x2", 2),), equation(c2, "(add x1 x2) = e", 2)
    )
    assert check_quasi_identity(c2, diagonal)
    below = QuasiIdentity(
        2, (equation(m2, "(meet x1 x2) = x1", 2),), equation(m2, "x1 = x2", 2)
    )
    assert not check_quasi_identity(m2, below)
    plain = QuasiIdentity(1, (), equation(c2, "(add x1 x1) = e", 1))
    assert check_quasi_identity(c2, plain)


def test_quasi_identity_checks_variables(c2):
    with pytest.raises(IndexOutOfRange):
        QuasiIdentity(1, (), equation(c2, "x1 = x2", 2))
    with pytest.raises(IndexOutOfRange):
        QuasiIdentity(1, (equation(c2, "x2 = e", 2),), equation(c2, "x1 = e", 1))


def test_c2_and_c3_are_distinguished(c2, c3):
    verdict = geom_equivalent_bounded(c2, c3, 1, 2, 2)
    assert verdict.status is EquivalenceStatus.DISTINGUISHED
    assert verdict.distinguished
    witness = verdict.witness
    assert witness is not None
    assert len(witness.system) == 0
    assert witness.var_count == 1
    assert witness.pair == equation(c2, "(add x1 x1) = e", 1)
    assert witness.holds_in == 1


def test_c2_and_its_square_agree(c2, c2_squared):
    verdict = geom_equivalent_bounded(c2, c2_squared, 2, 2, 2)
    assert verdict.status is EquivalenceStatus.EQUIVALENT_UP_TO_BOUND
    assert verdict.witness is None
    assert (verdict.bounds.var_count, verdict.bounds.depth) == (2, 2)


def test_bounded_equivalence_checks_bounds(c2, c3, m2):
    with pytest.raises(IndexOutOfRange):
        geom_equivalent_bounded(c2, c3, 0, 2, 2)
    with pytest.raises(IndexOutOfRange):
        geom_equivalent_bounded(c2, c3, 1, -1, 2)
    with pytest.raises(SignatureMismatch):
        geom_equivalent_bounded(c2, m2, 1, 1, 1)


def test_bounded_equivalence_respects_system_cap(c2, c3):
    with pytest.raises(SizeLimitExceeded):
        geom_equivalent_bounded(c2, c3, 1, 2, 2, Limits(max_systems=1))


def test_separation(c2, c3, c2_squared):
    report = separation_equivalence(c2, c2_squared)
    assert report.forward and report.backward
    assert report.equivalent

    report = separation_equivalence(c2, c3)
    assert not report.forward
    assert not report.backward
    assert report.forward_unseparated == (0, 1)
    assert report.backward_unseparated == (0, 1)
    assert not report.equivalent


def test_cross_check_agrees_on_fixtures(c2, c3, c2_squared):
    verdict, report = cross_check_equivalence(c2, c2_squared, 2, 2, 2)
    assert not verdict.distinguished and report.equivalent
    verdict, report = cross_check_equivalence(c2, c3, 1, 2, 2)
    assert verdict.distinguished and not report.equivalent


def test_cross_check_reports_conflicts(c2, c3, monkeypatch):
    monkeypatch.setattr(
        relations,
        "separation_equivalence",
        lambda first, second, limits: SeparationReport(True, True),
    )
    with pytest.raises(CriteriaConflict):
        cross_check_equivalence(c2, c3, 1, 2, 2)


def test_reduce_drops_redundant_equations(c2):
    system = EquationSystem(
        2, (equation(c2, "(add x1 x2) = e", 2), equation(c2, "x1 = x2", 2))
    )
    reduced = reduce_system(c2, 2, system)
    assert [str(e) for e in reduced] == ["x1 = x2"]


@pytest.mark.parametrize("name", ["C2", "C3", "M2"])
def test_reduce_random_systems(name, algebras):
    rng = random.Random(21)
    algebra = algebras[name]
    for var_count in (1, 2):
        pairs = list(TermCatalog([algebra], var_count, 2).pairs())
        height = enumerate_closed_sets(algebra, var_count).height
        for _ in range(35):
            chosen = rng.sample(pairs, min(len(pairs), rng.randint(0, 8)))
            system = EquationSystem(var_count, tuple(chosen))
            reduced = reduce_system(algebra, var_count, system)
            assert set(reduced.equations) <= set(system.equations)
            assert len(reduced) <= height
            assert (
                solve_system(algebra, var_count, reduced).points
                == solve_system(algebra, var_count, system).points
            )


def test_reduce_for_consequence(c2):
    system = EquationSystem(2, (equation(c2, "x1 = e", 2), equation(c2, "x2 = e", 2)))
    reduced = reduce_for_consequence(c2, 2, system, equation(c2, "x1 = e", 2))
    assert [str(e) for e in reduced] == ["x1 = e"]
    reduced = reduce_for_consequence(c2, 2, system, equation(c2, "x1 = x2", 2))
    assert len(reduced) == 2


def test_reduce_for_consequence_needs_a_consequence(c2):
    system = EquationSystem(2, (equation(c2, "x1 = e", 2),))
    with pytest.raises(InputError):
        reduce_for_consequence(c2, 2, system, equation(c2, "x2 = e", 2))


@pytest.mark.parametrize("name", ["C2", "C3", "M2"])
def test_bounded_equivalence_is_reflexive(name, algebras):
    algebra = algebras[name]
    verdict = geom_equivalent_bounded(algebra, algebra, 1, 2, 2)
    assert verdict.status is EquivalenceStatus.EQUIVALENT_UP_TO_BOUND
    assert verdict.witness is None


def test_swapping_the_algebras_flips_only_the_witness_side(c2, c3):
    forward = geom_equivalent_bounded(c2, c3, 1, 2, 2).witness
    backward = geom_equivalent_bounded(c3, c2, 1, 2, 2).witness
    assert forward is not None and backward is not None
    assert backward.system == forward.system
    assert backward.pair == forward.pair
    assert (forward.holds_in, backward.holds_in) == (1, 2)


def test_identities_survive_direct_powers(c2, c2_squared, m2):
    assert identities_up_to(c2, 1, 2) == identities_up_to(c2_squared, 1, 2)
    m2_squared = direct_product([m2, m2])
    assert identities_up_to(m2, 2, 1) == identities_up_to(m2_squared, 2, 1)
