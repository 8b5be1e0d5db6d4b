import logging

import numpy as np

from uageo.algebra.loader import LineTokens
from uageo.errors import InputError, ParseError, TableError
from uageo.representation.model import FiniteGroup, FiniteRepresentation

logger = logging.getLogger(__name__)


def _entries(tokens: LineTokens, count: int, bound: int, what: str) -> list[int]:
    values: list[int] = []
    for _ in range(count):
        line = tokens.line
        value = tokens.integer(f"an entry of the {what}")
        if not 0 <= value < bound:
            raise TableError(f"{what} entry {value} is outside 0..{bound - 1}", line=line)
        values.append(value)
    return values


def _read_group(tokens: LineTokens) -> FiniteGroup:
    group_line = tokens.line
    tokens.keyword("group")
    order = tokens.integer("the group order")
    if order < 1:
        raise ParseError(f"group order must be positive, got {order}", line=group_line)
    table = np.array(_entries(tokens, order * order, order, "group table"), dtype=np.intp)
    try:
        return FiniteGroup(table.reshape(order, order))
    except InputError as err:
        raise err.at(None, group_line) from None


def _require_end(tokens: LineTokens):
    if not tokens.exhausted:
        raise ParseError(f"unexpected trailing token '{tokens.peek()}'", line=tokens.line)


def load_group(text: str, source: str | None = None) -> FiniteGroup:
    """Parses a group file: "group N" followed by the N*N multiplication table."""
    try:
        tokens = LineTokens(text)
        group = _read_group(tokens)
        _require_end(tokens)
    except InputError as err:
        raise err.at(source) from None
    return group


def load_representation(text: str, source: str | None = None) -> FiniteRepresentation:
    """Parses the representation file format.

    rep NAME
    modulus M
    dim D
    group N
    <N*N table entries>
    action
    <N matrices of D*D entries, row-major>
    """
    try:
        return _load_representation(LineTokens(text))
    except InputError as err:
        raise err.at(source) from None


def _load_representation(tokens: LineTokens) -> FiniteRepresentation:
    tokens.keyword("rep")
    name = tokens.next("a representation name")
    tokens.keyword("modulus")
    modulus_line = tokens.line
    modulus = tokens.integer("the modulus")
    if modulus < 2:
        raise ParseError(f"modulus must be at least 2, got {modulus}", line=modulus_line)
    tokens.keyword("dim")
    dim_line = tokens.line
    dim = tokens.integer("the dimension")
    if dim < 0:
        raise ParseError(f"negative dimension {dim}", line=dim_line)
    group = _read_group(tokens)

    action_line = tokens.line
    tokens.keyword("action")
    entries = _entries(tokens, group.order * dim * dim, modulus, "action")
    _require_end(tokens)
    action = np.array(entries, dtype=np.int64).reshape(group.order, dim, dim)
    try:
        rep = FiniteRepresentation(name, modulus, group, action)
    except InputError as err:
        raise err.at(None, action_line) from None
    logger.debug(f"loaded {rep!r}")
    return rep


def format_representation(rep: FiniteRepresentation) -> str:
    lines = [
        f"rep {rep.name}",
        f"modulus {rep.modulus}",
        f"dim {rep.dim}",
        f"group {rep.group.order}",
    ]
    lines.extend(" ".join(str(v) for v in row) for row in rep.group.table)
    lines.append("action")
    for matrix in rep.action:
        lines.extend(" ".join(str(v) for v in row) for row in matrix)
    return "\n".join(lines) + "\n"
