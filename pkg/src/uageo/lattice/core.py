import logging
from enum import Enum

import numpy as np

from uageo.algebra.model import FiniteAlgebra
from uageo.errors import SizeLimitExceeded
from uageo.galois.core import all_points, closure_of_set
from uageo.lattice.model import ClosedSet, ClosedSetLattice, LatticeVerdict
from uageo.limits import DEFAULT_LIMITS, Limits

logger = logging.getLogger(__name__)


class LatticeMode(Enum):
    AUTO = "auto"
    EXHAUSTIVE = "exhaustive"
    GENERATOR = "generator"


class _Closures:
    """Closure operator on bitmasks over the points of H^n, memoized."""

    def __init__(self, algebra: FiniteAlgebra, var_count: int, limits: Limits):
        self._algebra = algebra
        self._var_count = var_count
        self._limits = limits
        self.points = [tuple(p) for p in all_points(algebra, var_count, limits).tolist()]
        self._bit = {p: i for i, p in enumerate(self.points)}
        self._cache: dict[int, int] = {}

    def to_mask(self, points) -> int:
        mask = 0
        for p in points:
            mask |= 1 << self._bit[tuple(p)]
        return mask

    def to_points(self, mask: int) -> ClosedSet:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def close(self, mask: int) -> int:
        if mask not in self._cache:
            closure = closure_of_set(
                self._algebra, self._var_count, self.to_points(mask), self._limits
            )
            self._cache[mask] = self.to_mask(closure.points)
        return self._cache[mask]


def _exhaustive(closures: _Closures) -> set[int]:
    closed: set[int] = set()
    for mask in range(1 << len(closures.points)):
        if closures.close(mask) == mask:
            closed.add(mask)
    return closed


def _from_generators(closures: _Closures) -> set[int]:
    """Closures of the empty set and of singletons, saturated under meet and join."""
    seeds = [closures.close(0)]
    seeds.extend(closures.close(1 << i) for i in range(len(closures.points)))
    closed: set[int] = set()
    frontier: list[int] = []
    for seed in seeds:
        if seed not in closed:
            closed.add(seed)
            frontier.append(seed)
    while frontier:
        grown: list[int] = []
        for new in frontier:
            for old in list(closed):
                for combined in (new & old, closures.close(new | old)):
                    if combined not in closed:
                        closed.add(combined)
                        grown.append(combined)
        frontier = grown
    return closed


def enumerate_closed_sets(
    algebra: FiniteAlgebra,
    var_count: int,
    mode: LatticeMode = LatticeMode.AUTO,
    limits: Limits = DEFAULT_LIMITS,
) -> ClosedSetLattice:
    closures = _Closures(algebra, var_count, limits)
    subsets = 1 << len(closures.points)
    if mode is LatticeMode.AUTO:
        exhaustive = subsets <= limits.max_exhaustive_subsets
        mode = LatticeMode.EXHAUSTIVE if exhaustive else LatticeMode.GENERATOR
    if mode is LatticeMode.EXHAUSTIVE:
        if subsets > limits.max_exhaustive_subsets:
            raise SizeLimitExceeded("max_exhaustive_subsets", subsets,
                                    limits.max_exhaustive_subsets)
        closed = _exhaustive(closures)
    else:
        closed = _from_generators(closures)

    elements = [closures.to_points(m) for m in closed]
    lattice = ClosedSetLattice(algebra, var_count, elements)
    logger.info(
        f"{algebra.name}^{var_count}: {len(lattice)} algebraic sets ({mode.value} mode)"
    )
    return lattice


def lattice_meet(lattice: ClosedSetLattice, a: ClosedSet, b: ClosedSet) -> ClosedSet:
    i, j = lattice.index_of(a), lattice.index_of(b)
    return lattice.elements[int(lattice.glb[i, j])]


def lattice_join(
    lattice: ClosedSetLattice,
    a: ClosedSet,
    b: ClosedSet,
    limits: Limits = DEFAULT_LIMITS,
) -> ClosedSet:
    """Closure of the union, which is again an element of the lattice."""
    i, j = lattice.index_of(a), lattice.index_of(b)
    union = set(lattice.elements[i]) | set(lattice.elements[j])
    closure = closure_of_set(lattice.algebra, lattice.var_count, union, limits)
    return lattice.elements[lattice.index_of(closure.points)]


def is_distributive(lattice: ClosedSetLattice) -> LatticeVerdict:
    """Checks a glb (b lub c) = (a glb b) lub (a glb c) over all triples."""
    glb, lub = lattice.glb, lattice.lub
    for a in range(len(lattice)):
        diff = glb[a, lub] != lub[np.ix_(glb[a, :], glb[a, :])]
        if diff.any():
            b, c = np.argwhere(diff)[0]
            return LatticeVerdict(False, (a, int(b), int(c)))
    return LatticeVerdict(True)


def is_modular(lattice: ClosedSetLattice) -> LatticeVerdict:
    """Checks a <= c implies a lub (b glb c) = (a lub b) glb c over all triples."""
    glb, lub, leq = lattice.glb, lattice.lub, lattice.leq
    for a in range(len(lattice)):
        lhs = lub[a, glb]
        rhs = glb[lub[a, :][:, None], np.arange(len(lattice))[None, :]]
        diff = (lhs != rhs) & leq[a][None, :]
        if diff.any():
            b, c = np.argwhere(diff)[0]
            return LatticeVerdict(False, (a, int(b), int(c)))
    return LatticeVerdict(True)
