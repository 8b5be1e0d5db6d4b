from dataclasses import dataclass
from functools import cached_property

import numpy as np

from uageo.errors import (
    ActionNotHomomorphic,
    GroupAxiomViolation,
    IndexOutOfRange,
    InputError,
    TableError,
)


class FiniteGroup:
    """A group on {0..order-1} given by its multiplication table."""

    def __init__(self, table: np.ndarray):
        table = np.array(table, dtype=np.intp)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupAxiomViolation(
                f"group table must be square, got shape {table.shape}"
            )
        order = table.shape[0]
        if table.min() < 0 or table.max() >= order:
            raise GroupAxiomViolation(f"group table has a value outside 0..{order - 1}")

        elements = np.arange(order)
        identities = [
            e
            for e in range(order)
            if np.array_equal(table[e], elements)
            and np.array_equal(table[:, e], elements)
        ]
        if not identities:
            raise GroupAxiomViolation("group table has no identity element")
        identity = identities[0]

        for a in range(order):
            # (a b) c against a (b c), for all b and c at once
            if not np.array_equal(table[table[a]], table[a][table]):
                raise GroupAxiomViolation(f"multiplication is not associative at {a}")

        inverses = np.argmax(table == identity, axis=1)
        if not (table[elements, inverses] == identity).all():
            missing = int(np.flatnonzero(table[elements, inverses] != identity)[0])
            raise GroupAxiomViolation(f"element {missing} has no inverse")

        table.flags.writeable = False
        inverses.flags.writeable = False
        self._table = table
        self._identity = identity
        self._inverses = inverses

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(np.zeros((1, 1), dtype=np.intp))

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def inverses(self) -> np.ndarray:
        return self._inverses

    def multiply(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inverse(self, a: int) -> int:
        return int(self._inverses[a])

    def __len__(self) -> int:
        return self.order


class FiniteRepresentation:
    """A group acting on (Z/m)^d from the right by matrices.

    Vectors are rows, so v o g = v @ action[g] (mod m), and action[g] @ action[h]
    must equal action[g h].
    """

    def __init__(self, name: str, modulus: int, group: FiniteGroup, action: np.ndarray):
        if modulus < 2:
            raise InputError(f"modulus must be at least 2, got {modulus}")
        action = np.array(action, dtype=np.int64)
        if action.ndim != 3 or action.shape[0] != group.order or (
            action.shape[1] != action.shape[2]
        ):
            raise TableError(
                f"need {group.order} square matrices, got shape {action.shape}"
            )
        if action.size and (action.min() < 0 or action.max() >= modulus):
            raise TableError(f"matrix entries must lie in 0..{modulus - 1}")

        dim = action.shape[1]
        if not np.array_equal(action[group.identity], np.eye(dim, dtype=np.int64)):
            raise ActionNotHomomorphic("the identity element does not act trivially")
        for g in range(group.order):
            products = np.einsum("ij,hjk->hik", action[g], action) % modulus
            expected = action[group.table[g]]
            if not np.array_equal(products, expected):
                h = int(np.flatnonzero((products != expected).any(axis=(1, 2)))[0])
                raise ActionNotHomomorphic(
                    f"M({g}) M({h}) differs from M({group.multiply(g, h)})"
                )

        action.flags.writeable = False
        self._name = name
        self._modulus = modulus
        self._group = group
        self._action = action

    @property
    def name(self) -> str:
        return self._name

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def dim(self) -> int:
        return self._action.shape[1]

    @property
    def group(self) -> FiniteGroup:
        return self._group

    @property
    def action(self) -> np.ndarray:
        """Array of shape (order, dim, dim): one matrix per group element."""
        return self._action

    def matrix(self, g: int) -> np.ndarray:
        return self._action[g]

    @cached_property
    def module_size(self) -> int:
        return self._modulus**self.dim

    def __repr__(self) -> str:
        return (
            f"FiniteRepresentation({self._name!r}, Z/{self._modulus}, dim={self.dim}, "
            f"|G|={self._group.order})"
        )


# A group word is a sequence of (letter index, exponent +1 or -1); () is the identity
GroupWord = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ActionSummand:
    """x_variable acted on by the K-linear combination sum c * word."""

    variable: int
    combination: tuple[tuple[int, GroupWord], ...]


@dataclass(frozen=True)
class ActionTerm:
    summands: tuple[ActionSummand, ...]

    def check(self, size_x: int, size_y: int):
        for summand in self.summands:
            if not 1 <= summand.variable <= size_x:
                raise IndexOutOfRange(f"x{summand.variable} outside 1..{size_x}")
            for _, word in summand.combination:
                for letter, exponent in word:
                    if not 1 <= letter <= size_y:
                        raise IndexOutOfRange(f"y{letter} outside 1..{size_y}")
                    if exponent not in (1, -1):
                        raise IndexOutOfRange(f"exponent {exponent} is not +1 or -1")


@dataclass(frozen=True, order=True)
class RepPoint:
    """alpha: X -> V (one vector per module variable) and beta: Y -> G."""

    module: tuple[tuple[int, ...], ...]
    group: tuple[int, ...]
