from collections.abc import Iterable

import numpy as np

from uageo.galois.catalog import TermCatalog
from uageo.galois.model import Point


def _mask_of(catalog: TermCatalog, points: Iterable[Point]) -> np.ndarray:
    index = {tuple(p): i for i, p in enumerate(catalog.points().tolist())}
    mask = np.zeros(catalog.points().shape[0], dtype=bool)
    for p in points:
        mask[index[tuple(p)]] = True
    return mask


def oracle_closure(catalog: TermCatalog, points: Iterable[Point]) -> frozenset[Point]:
    """Intersection of the solution sets of every catalogued pair that holds on A.

    With the empty intersection being the whole space, this is (A')' restricted to
    pairs up to the catalog depth; it approaches A'' from above as the depth grows.
    """
    given = _mask_of(catalog, points)
    closure = np.ones_like(given)
    for later, earlier in catalog.pair_indices():
        solutions = catalog.solution_mask(later, earlier)
        if (solutions | ~given).all():
            closure &= solutions
    return frozenset(map(tuple, catalog.points()[closure].tolist()))


def oracle_algebraic_sets(catalog: TermCatalog) -> set[frozenset[Point]]:
    """Every intersection of solution sets of catalogued pairs, plus the whole space."""
    everything = catalog.points()
    masks = {np.ones(everything.shape[0], dtype=bool).tobytes()}
    frontier = list(masks)
    singles = {m.tobytes() for m in catalog.all_solution_masks()}
    while frontier:
        grown: list[bytes] = []
        for current in frontier:
            base = np.frombuffer(current, dtype=bool)
            for single in singles:
                meet = (base & np.frombuffer(single, dtype=bool)).tobytes()
                if meet not in masks:
                    masks.add(meet)
                    grown.append(meet)
        frontier = grown
    return {
        frozenset(map(tuple, everything[np.frombuffer(m, dtype=bool)].tolist()))
        for m in masks
    }


def oracle_least_algebraic_superset(
    catalog: TermCatalog, points: Iterable[Point]
) -> frozenset[Point]:
    """Smallest oracle algebraic set containing the points."""
    given = frozenset(tuple(p) for p in points)
    supersets = [s for s in oracle_algebraic_sets(catalog) if given <= s]
    return min(supersets, key=len)


def oracle_is_algebraic(catalog: TermCatalog, points: Iterable[Point]) -> bool:
    given = frozenset(tuple(p) for p in points)
    return oracle_closure(catalog, given) == given
