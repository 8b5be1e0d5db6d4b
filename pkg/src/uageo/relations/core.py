import itertools
import logging
import math
from collections.abc import Callable, Sequence

import numpy as np

from uageo.algebra.core import enumerate_homs
from uageo.algebra.model import FiniteAlgebra, require_shared_signature
from uageo.errors import CriteriaConflict, IndexOutOfRange, InputError
from uageo.galois.catalog import TermCatalog
from uageo.galois.core import all_points, solution_mask, system_closure_membership
from uageo.galois.model import EquationSystem
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.relations.model import (
    Bounds,
    EquivalenceStatus,
    EquivalenceVerdict,
    EquivalenceWitness,
    QuasiIdentity,
    SeparationReport,
)
from uageo.terms.core import enumerate_terms, evaluate_enumerated, term_size
from uageo.terms.model import Equation

logger = logging.getLogger(__name__)


def identities_up_to(
    algebra: FiniteAlgebra,
    var_count: int,
    depth: int,
    limits: Limits = DEFAULT_LIMITS,
) -> list[Equation]:
    """Pairs of enumerated terms that agree at every point of H^n.

    Each pair is (later term, earlier term) in canonical order, sorted by the later
    term and then by the earlier one.
    """
    terms = enumerate_terms(algebra.signature, var_count, depth, limits)
    values = evaluate_enumerated(terms, algebra, all_points(algebra, var_count, limits))
    classes: dict[bytes, list[int]] = {}
    identities: list[Equation] = []
    for later, term in enumerate(terms):
        same = classes.setdefault(values[later].tobytes(), [])
        for earlier in same:
            identities.append(Equation(term, terms[earlier]))
        limits.check("max_pairs", len(identities))
        same.append(later)
    logger.info(f"{len(identities)} identities of {algebra.name} over {len(terms)} terms")
    return identities


def check_quasi_identity(
    algebra: FiniteAlgebra, quasi: QuasiIdentity, limits: Limits = DEFAULT_LIMITS
) -> bool:
    return system_closure_membership(
        algebra, quasi.var_count, quasi.premise_system, quasi.conclusion, limits
    )


def _first_witness(
    catalog: TermCatalog, system_limit: int, limits: Limits
) -> tuple[list[int], int, int] | None:
    """Searches systems of catalogued pairs for one whose closures disagree.

    Returns (system pair positions, candidate pair position, algebra that holds it).
    Pairs with the same solution sets in both algebras are interchangeable, so each
    such class contributes one representative: its smallest pair by total size.
    """
    pairs = list(catalog.pair_indices())
    first = catalog.all_solution_masks(0)
    second = catalog.all_solution_masks(1)
    sizes = [
        term_size(catalog.terms[later]) + term_size(catalog.terms[earlier])
        for later, earlier in pairs
    ]

    representatives: dict[tuple[bytes, bytes], int] = {}
    for position in range(len(pairs)):
        key = (first[position].tobytes(), second[position].tobytes())
        current = representatives.get(key)
        if current is None or sizes[position] < sizes[current]:
            representatives[key] = position
    candidates = sorted(representatives.values(), key=lambda p: (sizes[p], p))

    total = sum(math.comb(len(candidates), r) for r in range(system_limit + 1))
    limits.check("max_systems", total)

    # every system reaching the same pair of solution sets behaves alike; keep the
    # one that comes first in (total size, positions) order
    states: dict[tuple[bytes, bytes], tuple[tuple[int, tuple[int, ...]], list[int]]] = {}
    everywhere = (
        np.ones(first.shape[1], dtype=bool),
        np.ones(second.shape[1], dtype=bool),
    )
    for r in range(system_limit + 1):
        for chosen in itertools.combinations(candidates, r):
            system = sorted(chosen)
            s1, s2 = everywhere
            for p in system:
                s1 = s1 & first[p]
                s2 = s2 & second[p]
            key = (sum(sizes[p] for p in system), tuple(system))
            state = (s1.tobytes(), s2.tobytes())
            if state not in states or key < states[state][0]:
                states[state] = (key, system)

    ordered = sorted(states.items(), key=lambda s: s[1][0])
    for (s1_bytes, s2_bytes), (_, system) in ordered:
        s1 = np.frombuffer(s1_bytes, dtype=bool)
        s2 = np.frombuffer(s2_bytes, dtype=bool)
        in_first = (first | ~s1).all(axis=1)
        in_second = (second | ~s2).all(axis=1)
        differing = np.flatnonzero(in_first != in_second)
        if differing.size:
            position = int(differing[0])
            return system, position, 1 if in_first[position] else 2
    return None


def geom_equivalent_bounded(
    first: FiniteAlgebra,
    second: FiniteAlgebra,
    var_count: int,
    depth: int,
    system_limit: int,
    limits: Limits = DEFAULT_LIMITS,
) -> EquivalenceVerdict:
    """Compares T'' over the two algebras for bounded systems T and pairs.

    A distinguished verdict is always sound; an equivalent one only covers systems
    of at most `system_limit` pairs built from terms of height at most `depth`,
    over 1..var_count variables.
    """
    require_shared_signature(first, second)
    if var_count < 1 or depth < 0 or system_limit < 0:
        raise IndexOutOfRange(
            f"bounds must be n >= 1, depth >= 0, system limit >= 0; got "
            f"{var_count}, {depth}, {system_limit}"
        )
    bounds = Bounds(var_count, depth, system_limit)
    for k in range(1, var_count + 1):
        catalog = TermCatalog([first, second], k, depth, limits)
        found = _first_witness(catalog, system_limit, limits)
        if found is None:
            continue
        system_positions, pair_position, holds_in = found
        pair_indices = list(catalog.pair_indices())
        system = EquationSystem(
            k, tuple(catalog.pair(*pair_indices[p]) for p in system_positions)
        )
        pair = catalog.pair(*pair_indices[pair_position])
        witness = EquivalenceWitness(system, pair, holds_in)
        _verify_witness(first, second, witness, limits)
        logger.info(f"{first.name} and {second.name} distinguished at n={k}: {pair}")
        return EquivalenceVerdict(EquivalenceStatus.DISTINGUISHED, bounds, witness)
    logger.info(f"{first.name} and {second.name} agree up to {bounds}")
    return EquivalenceVerdict(EquivalenceStatus.EQUIVALENT_UP_TO_BOUND, bounds)


def _verify_witness(
    first: FiniteAlgebra,
    second: FiniteAlgebra,
    witness: EquivalenceWitness,
    limits: Limits,
):
    n = witness.var_count
    in_first = system_closure_membership(first, n, witness.system, witness.pair, limits)
    in_second = system_closure_membership(second, n, witness.system, witness.pair, limits)
    if in_first == in_second or in_first != (witness.holds_in == 1):
        raise CriteriaConflict(
            f"witness {witness.pair} does not re-verify: {first.name}={in_first}, "
            f"{second.name}={in_second}"
        )


def _unseparated_pair(
    source: FiniteAlgebra, target: FiniteAlgebra, limits: Limits
) -> tuple[int, int] | None:
    """First pair a < b of source that every hom into target identifies."""
    homs = enumerate_homs(source, target, limits=limits)
    images = np.array([h.mapping for h in homs], dtype=np.intp).reshape(
        len(homs), source.size
    )
    for a, b in itertools.combinations(range(source.size), 2):
        if not (images[:, a] != images[:, b]).any():
            return a, b
    return None


def separation_equivalence(
    first: FiniteAlgebra, second: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS
) -> SeparationReport:
    """Whether each algebra embeds into a finite power of the other.

    An algebra embeds into a power of another exactly when its homomorphisms into
    the other separate every pair of distinct elements.
    """
    require_shared_signature(first, second)
    forward = _unseparated_pair(first, second, limits)
    backward = _unseparated_pair(second, first, limits)
    return SeparationReport(
        forward=forward is None,
        backward=backward is None,
        forward_unseparated=forward,
        backward_unseparated=backward,
    )


def cross_check_equivalence(
    first: FiniteAlgebra,
    second: FiniteAlgebra,
    var_count: int,
    depth: int,
    system_limit: int,
    limits: Limits = DEFAULT_LIMITS,
) -> tuple[EquivalenceVerdict, SeparationReport]:
    """Runs both criteria; mutual embeddability with a bounded witness is a conflict."""
    verdict = geom_equivalent_bounded(
        first, second, var_count, depth, system_limit, limits
    )
    report = separation_equivalence(first, second, limits)
    if report.equivalent and verdict.distinguished:
        raise CriteriaConflict(
            f"{first.name} and {second.name} embed into each other's powers but "
            f"{verdict.witness.pair if verdict.witness else '?'} tells them apart"
        )
    return verdict, report


def _greedy_drop(
    masks: Sequence[np.ndarray], width: int, acceptable: Callable[[np.ndarray], bool]
) -> list[int]:
    """Drops positions in order while the meet of the rest stays acceptable.

    A position kept once stays necessary after later drops (the meet only grows),
    so one pass leaves an inclusion-minimal set.
    """
    kept = list(range(len(masks)))
    for position in range(len(masks)):
        rest = [k for k in kept if k != position]
        meet = np.ones(width, dtype=bool)
        for k in rest:
            meet &= masks[k]
        if acceptable(meet):
            kept = rest
    return kept


def reduce_system(
    algebra: FiniteAlgebra,
    var_count: int,
    system: EquationSystem,
    limits: Limits = DEFAULT_LIMITS,
) -> EquationSystem:
    """An inclusion-minimal subsystem with the same solution set."""
    points = all_points(algebra, var_count, limits)
    masks = [solution_mask(algebra, points, [e]) for e in system]
    target = solution_mask(algebra, points, system)
    kept = _greedy_drop(masks, points.shape[0], lambda meet: np.array_equal(meet, target))
    logger.info(f"reduced {len(system)} equations to {len(kept)}")
    return EquationSystem(var_count, tuple(system.equations[k] for k in kept))


def reduce_for_consequence(
    algebra: FiniteAlgebra,
    var_count: int,
    system: EquationSystem,
    pair: Equation,
    limits: Limits = DEFAULT_LIMITS,
) -> EquationSystem:
    """An inclusion-minimal subsystem T0 whose closure still contains the pair."""
    points = all_points(algebra, var_count, limits)
    masks = [solution_mask(algebra, points, [e]) for e in system]
    holds = solution_mask(algebra, points, [pair])

    def implies(meet: np.ndarray) -> bool:
        return bool((holds | ~meet).all())

    if not implies(solution_mask(algebra, points, system)):
        raise InputError(f"{pair} is not a consequence of the system")
    kept = _greedy_drop(masks, points.shape[0], implies)
    return EquationSystem(var_count, tuple(system.equations[k] for k in kept))
