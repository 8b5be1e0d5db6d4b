import logging

import numpy as np

from uageo.algebra.core import cartesian_power
from uageo.errors import ModulusMismatch
from uageo.limits import DEFAULT_LIMITS, Limits
from uageo.representation.model import FiniteGroup, FiniteRepresentation

logger = logging.getLogger(__name__)


def _shared_modulus(first: FiniteRepresentation, second: FiniteRepresentation) -> int:
    if first.modulus != second.modulus:
        raise ModulusMismatch(
            f"{first.name} is over Z/{first.modulus} but {second.name} is over "
            f"Z/{second.modulus}"
        )
    return first.modulus


def group_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """G1 x G2 with (g1, g2) numbered g1 * |G2| + g2."""
    n1, n2 = first.order, second.order
    table = (
        first.table[:, None, :, None] * n2 + second.table[None, :, None, :]
    ).reshape(n1 * n2, n1 * n2)
    return FiniteGroup(table)


def regular_matrices(group: FiniteGroup) -> np.ndarray:
    """Permutation matrices of the right regular action, e_x * R(g) = e_(x g)."""
    n = group.order
    matrices = np.zeros((n, n, n), dtype=np.int64)
    elements = np.arange(n)
    for g in range(n):
        matrices[g, elements, group.table[:, g]] = 1
    return matrices


def direct_sum(
    first: FiniteRepresentation,
    second: FiniteRepresentation,
    limits: Limits = DEFAULT_LIMITS,
) -> FiniteRepresentation:
    """(V1 + V2, G1 x G2), each factor acting on its own block."""
    m = _shared_modulus(first, second)
    limits.check("max_group_order", first.group.order * second.group.order)
    group = group_product(first.group, second.group)
    d1, d2 = first.dim, second.dim
    action = np.zeros((first.group.order, second.group.order, d1 + d2, d1 + d2), np.int64)
    action[:, :, :d1, :d1] = first.action[:, None]
    action[:, :, d1:, d1:] = second.action[None, :]
    action = action.reshape(group.order, d1 + d2, d1 + d2)
    return FiniteRepresentation(f"{first.name}+{second.name}", m, group, action)


def _phi_codes(modulus: int, rows: int, cols: int) -> tuple[np.ndarray, np.ndarray]:
    """All rows x cols matrices over Z/m in code order, and the weights giving codes."""
    width = rows * cols
    matrices = cartesian_power(modulus, width).astype(np.int64)
    matrices = matrices.reshape(modulus**width, rows, cols)
    weights = modulus ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return matrices, weights


def decode_triangular(
    first: FiniteRepresentation, second: FiniteRepresentation, index: int
) -> tuple[int, int, np.ndarray]:
    """(g1, g2, phi) for an element of triangular_product(first, second)."""
    phis, _ = _phi_codes(first.modulus, second.dim, first.dim)
    return _decode(index, second.group.order, phis)


def _decode(index: int, n2: int, phis: np.ndarray) -> tuple[int, int, np.ndarray]:
    pair, code = divmod(index, len(phis))
    g1, g2 = divmod(pair, n2)
    return g1, g2, phis[code]


def triangular_product(
    first: FiniteRepresentation,
    second: FiniteRepresentation,
    limits: Limits = DEFAULT_LIMITS,
) -> FiniteRepresentation:
    """The triangular product on V1 + V2.

    Elements are triples (g1, g2, phi) with phi a d2 x d1 matrix, numbered
    ((g1 * |G2|) + g2) * m**(d1 d2) + code(phi), phi read row by row as a base-m
    number. They multiply as

        (g1, g2, phi)(h1, h2, psi) = (g1 h1, g2 h2, phi + M2(g2) psi M1(g1)^-1)

    and act on a row (a, b) by a o g = a M1(g1) and b o g = b M2(g2) + (b phi) M1(g1).
    V1 is an invariant submodule; the quotient only sees g2.
    """
    m = _shared_modulus(first, second)
    d1, d2 = first.dim, second.dim
    n1, n2 = first.group.order, second.group.order
    limits.check("max_group_order", n1 * n2 * m ** (d1 * d2))

    phis, weights = _phi_codes(m, d2, d1)
    count = len(phis)
    order = n1 * n2 * count
    inverse_first = first.action[first.group.inverses]
    table = np.empty((order, order), dtype=np.intp)
    action = np.zeros((order, d1 + d2, d1 + d2), dtype=np.int64)
    for index in range(order):
        g1, g2, phi = _decode(index, n2, phis)
        twisted = np.einsum(
            "ij,pjk,kl->pil", second.matrix(g2), phis, inverse_first[g1]
        )
        codes = ((phi + twisted) % m).reshape(count, -1) @ weights
        table[index] = (
            (
                first.group.table[g1][:, None, None] * n2
                + second.group.table[g2][None, :, None]
            )
            * count
            + codes[None, None, :]
        ).reshape(order)
        action[index, :d1, :d1] = first.matrix(g1)
        action[index, d1:, :d1] = (phi @ first.matrix(g1)) % m
        action[index, d1:, d1:] = second.matrix(g2)

    logger.debug(f"triangular product {first.name}, {second.name} has order {order}")
    return FiniteRepresentation(
        f"tri({first.name},{second.name})", m, FiniteGroup(table), action
    )


def block_matrix_embedding(
    first: FiniteRepresentation,
    second: FiniteRepresentation,
    limits: Limits = DEFAULT_LIMITS,
) -> FiniteRepresentation:
    """The triangular product group as block-upper-triangular matrices.

    Each Vi is padded with the regular representation of Gi, Ri = Mi + Reg_i, and
    (g1, g2, phi) becomes [[R2(g2), phi' R1(g1)], [0, R1(g1)]] with phi' the zero
    padding of phi. Distinct elements get distinct matrices.
    """
    product = triangular_product(first, second, limits)
    m = product.modulus
    d1, d2 = first.dim, second.dim
    n1, n2 = first.group.order, second.group.order
    padded_first = _block_diagonal(first.action, regular_matrices(first.group))
    padded_second = _block_diagonal(second.action, regular_matrices(second.group))
    size1, size2 = d1 + n1, d2 + n2
    phis, _ = _phi_codes(m, d2, d1)

    action = np.zeros((product.group.order, size2 + size1, size2 + size1), dtype=np.int64)
    for index in range(product.group.order):
        g1, g2, phi = _decode(index, n2, phis)
        padded_phi = np.zeros((size2, size1), dtype=np.int64)
        padded_phi[:d2, :d1] = phi
        action[index, :size2, :size2] = padded_second[g2]
        action[index, :size2, size2:] = (padded_phi @ padded_first[g1]) % m
        action[index, size2:, size2:] = padded_first[g1]
    return FiniteRepresentation(
        f"blocks({first.name},{second.name})", m, product.group, action
    )


def _block_diagonal(upper: np.ndarray, lower: np.ndarray) -> np.ndarray:
    count, a, b = upper.shape[0], upper.shape[1], lower.shape[1]
    blocks = np.zeros((count, a + b, a + b), dtype=np.int64)
    blocks[:, :a, :a] = upper
    blocks[:, a:, a:] = lower
    return blocks


def wreath_product(
    rep: FiniteRepresentation, top: FiniteGroup, limits: Limits = DEFAULT_LIMITS
) -> FiniteRepresentation:
    """(V, H) wr G = (V^G, H wr G).

    Elements are pairs (f, g) with f: G -> H, numbered code(f) * |G| + g where
    f(0) is the most significant base-|H| digit. They multiply as
    (f, g)(f', g') = (y -> f(y) f'(y g), g g') and act on F: G -> V by
    (F o (f, g))(y) = F(y g^-1) o f(y g^-1).
    """
    n_h, n_g, d = rep.group.order, top.order, rep.dim
    limits.check("max_group_order", n_h**n_g * n_g)

    functions = cartesian_power(n_h, n_g)
    count = len(functions)
    order = count * n_g
    weights = n_h ** np.arange(n_g - 1, -1, -1, dtype=np.intp)

    table = np.empty((count, n_g, count, n_g), dtype=np.intp)
    for g in range(n_g):
        shifted = functions[:, top.table[:, g]]
        combined = rep.group.table[functions[:, None, :], shifted[None, :, :]]
        codes = combined @ weights
        table[:, g] = codes[:, :, None] * n_g + top.table[g][None, None, :]

    action = np.zeros((count, n_g, n_g, d, n_g, d), dtype=np.int64)
    for g in range(n_g):
        for s in range(n_g):
            action[:, g, s, :, top.table[s, g], :] = rep.action[functions[:, s]]

    logger.debug(f"{rep.name} wr G with |G|={n_g} has group order {order}")
    return FiniteRepresentation(
        f"{rep.name}wr{n_g}",
        rep.modulus,
        FiniteGroup(table.reshape(order, order)),
        action.reshape(order, n_g * d, n_g * d),
    )
