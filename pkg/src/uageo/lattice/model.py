from collections.abc import Sequence
from functools import cached_property

import numpy as np

from uageo.algebra.model import FiniteAlgebra
from uageo.errors import ElementNotInLattice, InputError
from uageo.galois.model import Point

ClosedSet = tuple[Point, ...]


class LatticeVerdict:
    """Outcome of a law check; a failing check carries the violating triple."""

    def __init__(self, holds: bool, witness: tuple[int, int, int] | None = None):
        self._holds = holds
        self._witness = witness

    @property
    def holds(self) -> bool:
        return self._holds

    @property
    def witness(self) -> tuple[int, int, int] | None:
        return self._witness


class ClosedSetLattice:
    """The algebraic sets of H^n ordered by inclusion.

    Elements are sorted point tuples, listed in lexicographic order of those
    tuples. `leq[i, j]` is True iff element i is contained in element j; the meet
    and join tables hold element indices.
    """

    def __init__(
        self, algebra: FiniteAlgebra, var_count: int, elements: Sequence[ClosedSet]
    ):
        ordered = sorted({tuple(sorted(element)) for element in elements})
        self._algebra = algebra
        self._var_count = var_count
        self._elements: list[ClosedSet] = ordered
        self._index = {element: i for i, element in enumerate(ordered)}

        sets = [frozenset(element) for element in ordered]
        n = len(sets)
        leq = np.array(
            [[sets[i] <= sets[j] for j in range(n)] for i in range(n)], dtype=bool
        )
        leq = leq.reshape(n, n)
        leq.flags.writeable = False
        self._leq = leq
        self._sets = sets

    @property
    def algebra(self) -> FiniteAlgebra:
        return self._algebra

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    def elements(self) -> list[ClosedSet]:
        return self._elements

    @property
    def leq(self) -> np.ndarray:
        return self._leq

    def __len__(self) -> int:
        return len(self._elements)

    def index_of(self, element: Sequence[Point]) -> int:
        key = tuple(sorted(tuple(p) for p in element))
        if key not in self._index:
            raise ElementNotInLattice(
                f"{list(key)} is not an algebraic set of this lattice"
            )
        return self._index[key]

    @cached_property
    def bottom(self) -> int:
        below = self._leq.sum(axis=0)
        return int(np.flatnonzero(below == 1)[0])

    @cached_property
    def top(self) -> int:
        below = self._leq.sum(axis=0)
        return int(np.flatnonzero(below == len(self))[0])

    @cached_property
    def glb(self) -> np.ndarray:
        """glb[i, j] is the index of the intersection of elements i and j."""
        n = len(self)
        glb = np.zeros((n, n), dtype=np.intp)
        for i in range(n):
            for j in range(n):
                meet = tuple(sorted(self._sets[i] & self._sets[j]))
                if meet not in self._index:
                    raise InputError("closed sets are not closed under intersection")
                glb[i, j] = self._index[meet]
        glb.flags.writeable = False
        return glb

    @cached_property
    def lub(self) -> np.ndarray:
        """lub[i, j] is the least element containing both i and j."""
        n = len(self)
        leq = self._leq
        lub = np.zeros((n, n), dtype=np.intp)
        for i in range(n):
            for j in range(n):
                above = np.flatnonzero(leq[i, :] & leq[j, :])
                least = [k for k in above if leq[k, above].all()]
                if len(least) != 1:
                    raise InputError(f"elements {i} and {j} have no least upper bound")
                lub[i, j] = least[0]
        lub.flags.writeable = False
        return lub

    @cached_property
    def covers(self) -> np.ndarray:
        """covers[i, j] iff j covers i, with nothing strictly between them."""
        lt = self._leq.copy()
        lt[np.diag_indices_from(lt)] = False
        return lt & ~(lt @ lt)

    @cached_property
    def atoms(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.covers[self.bottom])]

    @cached_property
    def height(self) -> int:
        """Number of covering steps in the longest chain from bottom to top."""
        order = sorted(range(len(self)), key=lambda i: len(self._elements[i]))
        longest = dict.fromkeys(order, 0)
        covers = self.covers
        for j in order:
            below = np.flatnonzero(covers[:, j])
            if below.size:
                longest[j] = 1 + max(longest[int(i)] for i in below)
        return max(longest.values())

    def cover_edges(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.covers)]
