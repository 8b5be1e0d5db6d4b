import logging
import sys
from collections.abc import Callable, Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError

from uageo.algebra.loader import load_algebra
from uageo.algebra.model import FiniteAlgebra
from uageo.cli.config import OutputFormat, RunConfig
from uageo.cli.report import (
    format_answer,
    format_equations,
    format_equivalence,
    format_lattice,
    format_rep_points,
    format_rep_summary,
    format_separation,
    format_verdict,
    key_values,
)
from uageo.errors import CriteriaConflict, InputError, SizeLimitExceeded
from uageo.galois.core import (
    closure_of_set,
    format_points,
    is_algebraic,
    parse_points,
    pullback_membership,
    solve_system,
    system_closure_membership,
)
from uageo.galois.model import EquationSystem
from uageo.lattice.core import LatticeMode, enumerate_closed_sets
from uageo.lattice.export import export_hasse_dot
from uageo.limits import DEFAULT_LIMITS
from uageo.relations.core import (
    check_quasi_identity,
    cross_check_equivalence,
    identities_up_to,
    reduce_for_consequence,
    reduce_system,
)
from uageo.relations.model import QuasiIdentity
from uageo.representation.core import action_closure_membership, solve_action_system
from uageo.representation.loader import (
    format_representation,
    load_group,
    load_representation,
)
from uageo.representation.model import ActionTerm, FiniteRepresentation
from uageo.representation.products import (
    block_matrix_embedding,
    triangular_product,
    wreath_product,
)
from uageo.representation.terms import parse_action_system, parse_action_term
from uageo.terms.model import Equation, Substitution
from uageo.terms.parser import parse_equation, parse_equations, parse_terms

logger = logging.getLogger(__name__)

EXIT_INPUT = 2
EXIT_SIZE_LIMIT = 3
EXIT_CONFLICT = 4

app = typer.Typer(
    name="uageo",
    help="Algebraic geometry over finite universal algebras and group representations.",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)

AlgebraOption = Annotated[Path | None, typer.Option("--algebra", help="Algebra file.")]
Algebra2Option = Annotated[
    Path | None, typer.Option("--algebra2", help="Second algebra file.")
]
VarsOption = Annotated[
    int | None, typer.Option("--vars", help="Number of (module) variables n.")
]
SystemOption = Annotated[
    Path | None,
    typer.Option("--system", help="System file, one equation or term per line."),
]
PointsOption = Annotated[Path | None, typer.Option("--points", help="Point set file.")]
PairOption = Annotated[
    str | None, typer.Option("--pair", help="Equation 'lhs = rhs' or action term.")
]
DepthOption = Annotated[int, typer.Option("--depth", help="Maximum term height.")]
SystemLimitOption = Annotated[
    int, typer.Option("--system-limit", help="Maximum number of pairs in a system.")
]
MaxPointsOption = Annotated[
    int | None,
    typer.Option(
        "--max-points",
        help=f"Cap on enumerated points (default {DEFAULT_LIMITS.max_points}).",
    ),
]
MaxTermsOption = Annotated[
    int | None,
    typer.Option(
        "--max-terms",
        help=f"Cap on enumerated terms (default {DEFAULT_LIMITS.max_terms}).",
    ),
]
MaxSystemsOption = Annotated[
    int | None,
    typer.Option(
        "--max-systems",
        help=f"Cap on explored systems (default {DEFAULT_LIMITS.max_systems}).",
    ),
]
OutOption = Annotated[
    Path | None, typer.Option("--out", help="Write the result here instead of stdout.")
]
ReportOption = Annotated[
    bool, typer.Option("--report", help="Line-oriented 'key: value' output.")
]
RepOption = Annotated[Path | None, typer.Option("--rep", help="Representation file.")]


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Turns library failures into one-line diagnostics and exit codes."""
    try:
        yield
    except ValidationError as err:
        first = err.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        message = f"{location}: {first['msg']}" if location else first["msg"]
        typer.echo(message, err=True)
        raise typer.Exit(EXIT_INPUT) from None
    except InputError as err:
        typer.echo(str(err), err=True)
        raise typer.Exit(EXIT_INPUT) from None
    except SizeLimitExceeded as err:
        typer.echo(str(err), err=True)
        raise typer.Exit(EXIT_SIZE_LIMIT) from None
    except CriteriaConflict as err:
        typer.echo(f"internal inconsistency: {err}", err=True)
        raise typer.Exit(EXIT_CONFLICT) from None


def _run(handler: Callable[[RunConfig], str], **flags: object):
    with _exit_codes():
        config = RunConfig.model_validate(flags)
        logger.debug(f"running {config.command} with limits {config.limits()}")
        text = handler(config)
        if config.out is not None:
            _write(config.out, text)
        else:
            typer.echo(text, nl=False)


def _read(path: Path | None) -> tuple[str, str]:
    assert path is not None
    try:
        return path.read_text(encoding="utf-8"), str(path)
    except UnicodeDecodeError as err:
        raise InputError(f"not valid UTF-8 ({err.reason})", source=str(path)) from None
    except OSError as err:
        raise InputError(f"cannot read file ({err.strerror})", source=str(path)) from None


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as err:
        message = f"cannot write file ({err.strerror})"
        raise InputError(message, source=str(path)) from None


def _algebra(path: Path | None) -> FiniteAlgebra:
    return load_algebra(*_read(path))


def _vars(config: RunConfig) -> int:
    assert config.vars is not None
    return config.vars


def _system(config: RunConfig, algebra: FiniteAlgebra) -> EquationSystem:
    text, source = _read(config.system)
    equations = parse_equations(text, algebra.signature, _vars(config), source)
    return EquationSystem(_vars(config), tuple(equations))


def _pair(config: RunConfig, algebra: FiniteAlgebra, var_count: int) -> Equation:
    assert config.pair is not None
    try:
        return parse_equation(config.pair, algebra.signature, var_count)
    except InputError as err:
        raise err.at("--pair") from None


def _points(config: RunConfig, algebra: FiniteAlgebra):
    text, source = _read(config.points)
    return parse_points(text, algebra, _vars(config), source)


def _representation(path: Path | None) -> FiniteRepresentation:
    return load_representation(*_read(path))


def _action_terms(config: RunConfig) -> list[ActionTerm]:
    if config.system is None:
        return []
    text, source = _read(config.system)
    return parse_action_system(text, _vars(config), config.group_vars, source)


@app.callback()
def configure(
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Log progress to stderr.")
    ] = False,
):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _solve(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    system = _system(config, algebra)
    solutions = solve_system(algebra, _vars(config), system, config.limits())
    return format_points(solutions.points)


@app.command()
def solve(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    system: SystemOption = None,
    max_points: MaxPointsOption = None,
    out: OutOption = None,
):
    """Print every point of H^n solving the system."""
    _run(_solve, command="solve", algebra=algebra, vars=vars, system=system,
         max_points=max_points, out=out)


def _closure_set(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    points = _points(config, algebra)
    closure = closure_of_set(algebra, _vars(config), points, config.limits())
    return format_points(closure.points)


@app.command("closure-set")
def closure_set(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    points: PointsOption = None,
    max_points: MaxPointsOption = None,
    out: OutOption = None,
):
    """Print the least algebraic set containing the given points."""
    _run(_closure_set, command="closure-set", algebra=algebra, vars=vars, points=points,
         max_points=max_points, out=out)


def _closure_pair(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    system = _system(config, algebra)
    pair = _pair(config, algebra, _vars(config))
    member = system_closure_membership(
        algebra, _vars(config), system, pair, config.limits()
    )
    return format_answer("member", member, config.report)


@app.command("closure-pair")
def closure_pair(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    system: SystemOption = None,
    pair: PairOption = None,
    max_points: MaxPointsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Decide whether a pair lies in the closure of the system."""
    _run(_closure_pair, command="closure-pair", algebra=algebra, vars=vars, system=system,
         pair=pair, max_points=max_points, report=report, out=out)


def _algebraic(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    points = _points(config, algebra)
    answer = is_algebraic(algebra, _vars(config), points, config.limits())
    return format_answer("algebraic", answer, config.report)


@app.command()
def algebraic(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    points: PointsOption = None,
    max_points: MaxPointsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Decide whether the point set is algebraic."""
    _run(_algebraic, command="algebraic", algebra=algebra, vars=vars, points=points,
         max_points=max_points, report=report, out=out)


def _lattice(config: RunConfig, mode: LatticeMode) -> str:
    algebra = _algebra(config.algebra)
    lattice = enumerate_closed_sets(algebra, _vars(config), mode, config.limits())
    if config.format is OutputFormat.DOT:
        return export_hasse_dot(lattice)
    return format_lattice(lattice, config.report)


@app.command()
def lattice(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    mode: Annotated[
        LatticeMode, typer.Option("--mode", help="How to find the algebraic sets.")
    ] = LatticeMode.AUTO,
    output_format: Annotated[
        OutputFormat, typer.Option("--format", help="Report text or a DOT Hasse diagram.")
    ] = OutputFormat.TEXT,
    max_points: MaxPointsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Enumerate the lattice of algebraic sets of H^n."""
    _run(lambda config: _lattice(config, mode), command="lattice", algebra=algebra,
         vars=vars, format=output_format, max_points=max_points, report=report, out=out)


def _equiv(config: RunConfig) -> str:
    first = _algebra(config.algebra)
    second = _algebra(config.algebra2)
    verdict, separation = cross_check_equivalence(
        first, second, _vars(config), config.depth, config.system_limit, config.limits()
    )
    if not config.report:
        return format_equivalence(verdict, separation, first, second)
    items = format_verdict(verdict, first, second) + format_separation(separation)
    return key_values(items)


@app.command()
def equiv(
    algebra: AlgebraOption = None,
    algebra2: Algebra2Option = None,
    vars: VarsOption = None,
    depth: DepthOption = 2,
    system_limit: SystemLimitOption = 2,
    max_terms: MaxTermsOption = None,
    max_systems: MaxSystemsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Compare two algebras geometrically, up to the given bounds."""
    _run(_equiv, command="equiv", algebra=algebra, algebra2=algebra2, vars=vars,
         depth=depth, system_limit=system_limit, max_terms=max_terms,
         max_systems=max_systems, report=report, out=out)


def _identities(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    return format_equations(
        identities_up_to(algebra, _vars(config), config.depth, config.limits())
    )


@app.command()
def identities(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    depth: DepthOption = 2,
    max_terms: MaxTermsOption = None,
    out: OutOption = None,
):
    """List the identities between enumerated terms."""
    _run(_identities, command="identities", algebra=algebra, vars=vars, depth=depth,
         max_terms=max_terms, out=out)


def _quasi(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    system = _system(config, algebra)
    conclusion = _pair(config, algebra, _vars(config))
    quasi = QuasiIdentity(_vars(config), system.equations, conclusion)
    return format_answer("holds", check_quasi_identity(algebra, quasi, config.limits()),
                         config.report)


@app.command()
def quasi(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    system: Annotated[
        Path | None, typer.Option("--system", help="Premises, one equation per line.")
    ] = None,
    pair: Annotated[str | None, typer.Option("--pair", help="The conclusion.")] = None,
    max_points: MaxPointsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Check the quasi-identity premises => conclusion."""
    _run(_quasi, command="quasi", algebra=algebra, vars=vars, system=system, pair=pair,
         max_points=max_points, report=report, out=out)


def _reduce(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    system = _system(config, algebra)
    if config.pair is None:
        reduced = reduce_system(algebra, _vars(config), system, config.limits())
    else:
        pair = _pair(config, algebra, _vars(config))
        reduced = reduce_for_consequence(algebra, _vars(config), system, pair,
                                         config.limits())
    return format_equations(reduced)


@app.command()
def reduce(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    system: SystemOption = None,
    pair: Annotated[
        str | None, typer.Option("--pair", help="Keep only what this consequence needs.")
    ] = None,
    max_points: MaxPointsOption = None,
    out: OutOption = None,
):
    """Print an inclusion-minimal subsystem with the same solutions."""
    _run(_reduce, command="reduce", algebra=algebra, vars=vars, system=system, pair=pair,
         max_points=max_points, out=out)


def _pullback(config: RunConfig) -> str:
    algebra = _algebra(config.algebra)
    text, source = _read(config.substitution)
    images = parse_terms(text, algebra.signature, _vars(config), source)
    substitution = Substitution.of(_vars(config), images)
    system = _system(config, algebra)
    pair = _pair(config, algebra, substitution.source_count)
    member = pullback_membership(algebra, substitution, system, pair, config.limits())
    return format_answer("member", member, config.report)


@app.command()
def pullback(
    algebra: AlgebraOption = None,
    vars: VarsOption = None,
    substitution: Annotated[
        Path | None,
        typer.Option("--substitution", help="Line j holds the image of y_j over X."),
    ] = None,
    system: SystemOption = None,
    pair: Annotated[str | None, typer.Option("--pair", help="A pair over Y.")] = None,
    max_points: MaxPointsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Decide whether a pair over Y lies in the pullback of the closure over X."""
    _run(_pullback, command="pullback", algebra=algebra, vars=vars,
         substitution=substitution, system=system, pair=pair, max_points=max_points,
         report=report, out=out)


GroupVarsOption = Annotated[
    int, typer.Option("--group-vars", help="Number of group variables |Y|.")
]


def _rep_solve(config: RunConfig) -> str:
    rep = _representation(config.rep)
    points = solve_action_system(
        rep, _vars(config), config.group_vars, _action_terms(config), config.limits()
    )
    return format_rep_points(points)


@app.command("rep-solve")
def rep_solve(
    rep: RepOption = None,
    vars: VarsOption = None,
    group_vars: GroupVarsOption = 1,
    system: SystemOption = None,
    max_points: MaxPointsOption = None,
    out: OutOption = None,
):
    """Print every point (alpha | beta) at which all action terms vanish."""
    _run(_rep_solve, command="rep-solve", rep=rep, vars=vars, group_vars=group_vars,
         system=system, max_points=max_points, out=out)


def _rep_closure(config: RunConfig) -> str:
    rep = _representation(config.rep)
    assert config.pair is not None
    try:
        candidate = parse_action_term(config.pair, _vars(config), config.group_vars)
    except InputError as err:
        raise err.at("--pair") from None
    member = action_closure_membership(
        rep, _vars(config), config.group_vars, _action_terms(config), candidate,
        config.limits(),
    )
    return format_answer("member", member, config.report)


@app.command("rep-closure")
def rep_closure(
    rep: RepOption = None,
    vars: VarsOption = None,
    group_vars: GroupVarsOption = 1,
    system: SystemOption = None,
    pair: Annotated[str | None, typer.Option("--pair", help="The action term.")] = None,
    max_points: MaxPointsOption = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Decide whether an action term vanishes wherever the system does."""
    _run(_rep_closure, command="rep-closure", rep=rep, vars=vars, group_vars=group_vars,
         system=system, pair=pair, max_points=max_points, report=report, out=out)


def _constructed(rep: FiniteRepresentation, config: RunConfig) -> str:
    if config.report:
        return format_rep_summary(rep)
    return format_representation(rep)


def _rep_triangular(config: RunConfig, embedding: bool) -> str:
    first = _representation(config.rep)
    second = _representation(config.rep2)
    build = block_matrix_embedding if embedding else triangular_product
    return _constructed(build(first, second, config.limits()), config)


@app.command("rep-triangular")
def rep_triangular(
    rep: RepOption = None,
    rep2: Annotated[
        Path | None, typer.Option("--rep2", help="Second representation file.")
    ] = None,
    embedding: Annotated[
        bool, typer.Option("--embedding", help="Write the faithful block matrices.")
    ] = False,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Build the triangular product of two representations."""
    _run(lambda config: _rep_triangular(config, embedding), command="rep-triangular",
         rep=rep, rep2=rep2, report=report, out=out)


def _rep_wreath(config: RunConfig) -> str:
    rep = _representation(config.rep)
    top = load_group(*_read(config.group))
    return _constructed(wreath_product(rep, top, config.limits()), config)


@app.command("rep-wreath")
def rep_wreath(
    rep: RepOption = None,
    group: Annotated[
        Path | None, typer.Option("--group", help="Group file of the top group.")
    ] = None,
    report: ReportOption = False,
    out: OutOption = None,
):
    """Build the wreath product of a representation with a finite group."""
    _run(_rep_wreath, command="rep-wreath", rep=rep, group=group, report=report, out=out)


def run_command(argv: Sequence[str]) -> int:
    """Runs one CLI invocation and returns its exit code."""
    command = typer.main.get_command(app)
    try:
        command.main(args=list(argv), prog_name="uageo", standalone_mode=True)
    except SystemExit as exit_:
        if exit_.code is None:
            return 0
        return exit_.code if isinstance(exit_.code, int) else 1
    return 0


def main():
    sys.exit(run_command(sys.argv[1:]))
