from collections.abc import Sequence
from enum import Enum

from uageo.errors import IndexOutOfRange
from uageo.galois.model import EquationSystem
from uageo.terms.model import Equation, highest_variable


class QuasiIdentity:
    """(premise_1 and ... and premise_k) => conclusion, over x1..x_var_count."""

    def __init__(
        self, var_count: int, premises: Sequence[Equation], conclusion: Equation
    ):
        self._premise_system = EquationSystem(var_count, premises)
        sides = (conclusion.lhs, conclusion.rhs)
        if max(highest_variable(t) for t in sides) > var_count:
            raise IndexOutOfRange(f"conclusion {conclusion} uses too many variables")
        self._var_count = var_count
        self._premises = tuple(premises)
        self._conclusion = conclusion

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    def premises(self) -> tuple[Equation, ...]:
        return self._premises

    @property
    def conclusion(self) -> Equation:
        return self._conclusion

    @property
    def premise_system(self) -> EquationSystem:
        return self._premise_system

    def __repr__(self) -> str:
        premises = " & ".join(str(p) for p in self._premises) or "true"
        return f"QuasiIdentity({premises} => {self._conclusion})"


class EquivalenceStatus(Enum):
    EQUIVALENT_UP_TO_BOUND = "equivalent-up-to-bound"
    DISTINGUISHED = "distinguished"


class EquivalenceWitness:
    """A system and pair whose closure membership differs between the algebras.

    `holds_in` is 1 or 2: the argument position of the algebra where the pair lies
    in the closure of the system.
    """

    def __init__(self, system: EquationSystem, pair: Equation, holds_in: int):
        self._system = system
        self._pair = pair
        self._holds_in = holds_in

    @property
    def system(self) -> EquationSystem:
        return self._system

    @property
    def pair(self) -> Equation:
        return self._pair

    @property
    def holds_in(self) -> int:
        return self._holds_in

    @property
    def var_count(self) -> int:
        return self._system.var_count


class Bounds:
    def __init__(self, var_count: int, depth: int, system_limit: int):
        self._var_count = var_count
        self._depth = depth
        self._system_limit = system_limit

    @property
    def var_count(self) -> int:
        return self._var_count

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def system_limit(self) -> int:
        return self._system_limit

    def __repr__(self) -> str:
        return (
            f"Bounds(vars={self._var_count}, depth={self._depth}, "
            f"system_limit={self._system_limit})"
        )


class EquivalenceVerdict:
    def __init__(
        self,
        status: EquivalenceStatus,
        bounds: Bounds,
        witness: EquivalenceWitness | None = None,
    ):
        self._status = status
        self._bounds = bounds
        self._witness = witness

    @property
    def status(self) -> EquivalenceStatus:
        return self._status

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    @property
    def witness(self) -> EquivalenceWitness | None:
        return self._witness

    @property
    def distinguished(self) -> bool:
        return self._status is EquivalenceStatus.DISTINGUISHED


class SeparationReport:
    """Whether each algebra embeds into a power of the other.

    An unseparated pair (a, b) of the first algebra is kept for each failing
    direction: no homomorphism into the other algebra tells a from b.
    """

    def __init__(
        self,
        forward: bool,
        backward: bool,
        forward_unseparated: tuple[int, int] | None = None,
        backward_unseparated: tuple[int, int] | None = None,
    ):
        self._forward = forward
        self._backward = backward
        self._forward_unseparated = forward_unseparated
        self._backward_unseparated = backward_unseparated

    @property
    def forward(self) -> bool:
        return self._forward

    @property
    def backward(self) -> bool:
        return self._backward

    @property
    def forward_unseparated(self) -> tuple[int, int] | None:
        return self._forward_unseparated

    @property
    def backward_unseparated(self) -> tuple[int, int] | None:
        return self._backward_unseparated

    @property
    def equivalent(self) -> bool:
        return self._forward and self._backward
