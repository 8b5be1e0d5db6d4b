import logging
from collections.abc import Iterator, Sequence

import numpy as np

from uageo.algebra.model import FiniteAlgebra, require_shared_signature
from uageo.galois.core import all_points
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.terms.core import enumerate_terms, evaluate_enumerated
from uageo.terms.model import Equation, Term

logger = logging.getLogger(__name__)


class TermCatalog:
    """Term functions of H^n up to a depth, one representative term each.

    Several algebras can be catalogued together; two terms are then the same entry
    only when they agree on every point of every algebra. The representative of an
    entry is the first term of that function in canonical order.
    """

    def __init__(
        self,
        algebras: Sequence[FiniteAlgebra],
        var_count: int,
        depth: int,
        limits: Limits = DEFAULT_LIMITS,
    ):
        signature = require_shared_signature(*algebras)
        self._algebras = list(algebras)
        self._var_count = var_count
        self._depth = depth
        self._points = [all_points(a, var_count, limits) for a in self._algebras]
        offsets = np.cumsum([0] + [p.shape[0] for p in self._points])
        self._slices = [
            slice(int(offsets[i]), int(offsets[i + 1])) for i in range(len(self._points))
        ]

        enumerated = enumerate_terms(signature, var_count, depth, limits)
        values = np.concatenate(
            [
                evaluate_enumerated(enumerated, algebra, points)
                for algebra, points in zip(self._algebras, self._points, strict=True)
            ],
            axis=1,
        )
        seen: set[bytes] = set()
        terms: list[Term] = []
        rows: list[int] = []
        for position, term in enumerate(enumerated):
            key = values[position].tobytes()
            if key in seen:
                continue
            seen.add(key)
            terms.append(term)
            rows.append(position)
        self._terms = terms
        self._values = values[rows]
        limits.check("max_pairs", len(terms) * (len(terms) - 1) // 2)
        logger.debug(
            f"catalog over {[a.name for a in self._algebras]}, n={var_count}, "
            f"depth={depth}: {len(terms)} functions from {len(enumerated)} terms"
        )

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def terms(self) -> list[Term]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def points(self, algebra_index: int = 0) -> np.ndarray:
        return self._points[algebra_index]

    def values(self, term_index: int, algebra_index: int = 0) -> np.ndarray:
        return self._values[term_index, self._slices[algebra_index]]

    def pair_indices(self) -> Iterator[tuple[int, int]]:
        """(later, earlier) index pairs, ordered by the later then the earlier."""
        for later in range(len(self._terms)):
            for earlier in range(later):
                yield later, earlier

    def pair(self, later: int, earlier: int) -> Equation:
        return Equation(self._terms[later], self._terms[earlier])

    def pairs(self) -> Iterator[Equation]:
        for later, earlier in self.pair_indices():
            yield self.pair(later, earlier)

    def solution_mask(
        self, later: int, earlier: int, algebra_index: int = 0
    ) -> np.ndarray:
        """Points of one algebra at which the two catalogued terms agree."""
        section = self._slices[algebra_index]
        return self._values[later, section] == self._values[earlier, section]

    def all_solution_masks(self, algebra_index: int = 0) -> np.ndarray:
        """Boolean array (pairs, points) in pair_indices order."""
        section = self._values[:, self._slices[algebra_index]]
        rows = [
            section[later] == section[earlier] for later, earlier in self.pair_indices()
        ]
        width = self._points[algebra_index].shape[0]
        return np.array(rows, dtype=bool).reshape(len(rows), width)
