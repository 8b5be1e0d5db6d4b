"""Text renderings of results, in plain and line-oriented key: value form."""

from collections.abc import Iterable, Sequence

from uageo.algebra.model import FiniteAlgebra
from uageo.galois.core import format_point
from uageo.lattice.core import is_distributive, is_modular
from uageo.lattice.model import ClosedSetLattice, LatticeVerdict
from uageo.relations.model import EquivalenceVerdict, SeparationReport
from uageo.representation.model import FiniteRepresentation, RepPoint
from uageo.terms.model import Equation


def key_values(items: Iterable[tuple[str, object]]) -> str:
    return "".join(f"{key}: {_value(value)}\n" for key, value in items)


def _value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


def format_answer(name: str, answer: bool, report: bool) -> str:
    if report:
        return key_values([(name, answer)])
    return f"{_value(answer)}\n"


def format_equations(equations: Iterable[Equation], prefix: str = "x") -> str:
    return "".join(f"{e.format(prefix)}\n" for e in equations)


def _closed_set(element: Sequence[tuple[int, ...]]) -> str:
    return "{" + ", ".join(format_point(p) for p in element) + "}"


def _triple(verdict: LatticeVerdict) -> str | None:
    if verdict.witness is None:
        return None
    return " ".join(str(i) for i in verdict.witness)


def format_lattice(lattice: ClosedSetLattice, report: bool) -> str:
    distributive = is_distributive(lattice)
    modular = is_modular(lattice)
    summary = [
        ("elements", len(lattice)),
        ("atoms", len(lattice.atoms)),
        ("height", lattice.height),
        ("distributive", distributive.holds),
        ("distributive_witness", _triple(distributive)),
        ("modular", modular.holds),
        ("modular_witness", _triple(modular)),
    ]
    if report:
        return key_values(summary)
    lines = [
        f"{i}: {_closed_set(element)}" for i, element in enumerate(lattice.elements)
    ]
    lines.extend(f"{key}: {_value(value)}" for key, value in summary if value is not None)
    return "\n".join(lines) + "\n"


def format_verdict(
    verdict: EquivalenceVerdict, first: FiniteAlgebra, second: FiniteAlgebra
) -> list[tuple[str, object]]:
    items: list[tuple[str, object]] = [
        ("status", verdict.status.value),
        ("vars", verdict.bounds.var_count),
        ("depth", verdict.bounds.depth),
        ("system_limit", verdict.bounds.system_limit),
    ]
    witness = verdict.witness
    if witness is not None:
        system = "; ".join(str(e) for e in witness.system) or "{}"
        items += [
            ("witness_vars", witness.var_count),
            ("witness_system", system),
            ("witness_pair", witness.pair),
            ("witness_holds_in", first.name if witness.holds_in == 1 else second.name),
        ]
    return items


def format_separation(separation: SeparationReport) -> list[tuple[str, object]]:
    def pair(unseparated: tuple[int, int] | None) -> str | None:
        return None if unseparated is None else f"{unseparated[0]} {unseparated[1]}"

    return [
        ("embeds_forward", separation.forward),
        ("embeds_backward", separation.backward),
        ("unseparated_forward", pair(separation.forward_unseparated)),
        ("unseparated_backward", pair(separation.backward_unseparated)),
        ("separation_equivalent", separation.equivalent),
    ]


def format_rep_point(point: RepPoint) -> str:
    vectors = " ".join(format_point(v) for v in point.module)
    elements = " ".join(str(g) for g in point.group)
    return f"{vectors} | {elements}".strip()


def format_rep_points(points: Iterable[RepPoint]) -> str:
    return "".join(format_rep_point(p) + "\n" for p in points)


def format_rep_summary(rep: FiniteRepresentation) -> str:
    return key_values(
        [
            ("name", rep.name),
            ("modulus", rep.modulus),
            ("dim", rep.dim),
            ("group_order", rep.group.order),
        ]
    )


def format_equivalence(
    verdict: EquivalenceVerdict,
    separation: SeparationReport,
    first: FiniteAlgebra,
    second: FiniteAlgebra,
) -> str:
    """Status line, bounds line, witness block in system file syntax, separation."""
    bounds = verdict.bounds
    lines = [
        verdict.status.value,
        f"bounds: vars={bounds.var_count} depth={bounds.depth} "
        f"system_limit={bounds.system_limit}",
    ]
    witness = verdict.witness
    if witness is not None:
        holds_in = first.name if witness.holds_in == 1 else second.name
        lines.append(f"# system over {witness.var_count} variables")
        lines.extend(str(e) for e in witness.system)
        lines.append(f"# pair in the closure over {holds_in} only")
        lines.append(str(witness.pair))
    for source, target, embeds, pair in (
        (first, second, separation.forward, separation.forward_unseparated),
        (second, first, separation.backward, separation.backward_unseparated),
    ):
        line = f"{source.name} embeds in a power of {target.name}: {_value(embeds)}"
        if pair is not None:
            line += f" ({pair[0]} and {pair[1]} never separated)"
        lines.append(line)
    return "\n".join(lines) + "\n"
