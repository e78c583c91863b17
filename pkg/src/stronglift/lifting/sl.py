"""Lifting SL_k(Z/n) to SL_k(Z) through a transvection decomposition."""
from __future__ import annotations

from ..errors import DimensionMismatch, NotSLModN, NotSquare
from ..matrix import IntMatrix, congruent_mod, det, is_sl_mod
from ..ring import check_modulus
from ..unital import usc_shift_mod
from .certificate import LiftCertificate

# A transvection I + c*E_ab is stored as (a, b, c).


def _row_add(g, a, b, c, n):
    """Left multiply by I + c E_ab: row a += c * row b."""
    ra, rb = g[a], g[b]
    for j in range(len(ra)):
        ra[j] = (ra[j] + c * rb[j]) % n


def _col_add(g, a, b, c, n):
    """Right multiply by I + c E_ab: column b += c * column a."""
    for r in g:
        r[b] = (r[b] + c * r[a]) % n


def decompose(m: IntMatrix, n: int):
    """Reduce ``m`` to the identity mod ``n`` with transvections.

    Returns ``(left, right)``: lists of transvections with
    ``L_m...L_1 * m * R_1...R_m = I (mod n)``.
    """
    k = m.nrows
    g = [[x % n for x in r] for r in m.rows()]
    left, right = [], []

    def row_op(a, b, c):
        c %= n
        if c:
            left.append((a, b, c))
            _row_add(g, a, b, c, n)

    def col_op(a, b, c):
        c %= n
        if c:
            right.append((a, b, c))
            _col_add(g, a, b, c, n)

    for p in range(k - 1):
        # make the pivot a unit by adding later columns to column p
        w = usc_shift_mod(g[p][p:], n)
        for off, c in enumerate(w.coefficients, start=1):
            col_op(p + off, p, c)
        inv = pow(g[p][p], -1, n)
        for j in range(p + 1, k):
            col_op(p, j, -g[p][j] * inv)
        for r in range(p + 1, k):
            row_op(r, p, -g[r][p] * inv)

    # diag(u_0, ..., u_{k-1}) with product 1: push units down the diagonal
    # using diag(u^-1, u) = w(u^-1) w(-1), w(x) = E12(x) E21(-1/x) E12(x)
    for p in range(k - 1):
        u = g[p][p]
        if u == 1:
            continue
        ui = pow(u, -1, n)
        q = p + 1
        # left multiply by w(ui) w(-1): the rightmost factor acts first
        for x in (n - 1, ui):
            xi = pow(x, -1, n)
            row_op(p, q, x)
            row_op(q, p, -xi)
            row_op(p, q, x)
    return g, left, right


def sl_lift_matrix(m_bar: IntMatrix, n: int) -> IntMatrix:
    """An exact SL_k(Z) matrix congruent to ``m_bar`` mod ``n``."""
    check_modulus(n)
    if not m_bar.is_square:
        raise NotSquare(f"expected a square matrix, got {m_bar.shape}")
    if not is_sl_mod(m_bar, n):
        raise NotSLModN(f"det = {det(m_bar)} is not 1 modulo {n}")
    k = m_bar.nrows
    if n == 1:
        return IntMatrix.identity(k)
    g, left, right = decompose(m_bar, n)
    if any(g[i][j] != int(i == j) for i in range(k) for j in range(k)):
        raise NotSLModN("reduction did not reach the identity")
    # m = L_1^-1 ... L_m^-1 R_m^-1 ... R_1^-1, inverse coefficients lifted to [0, n)
    x = [[int(i == j) for j in range(k)] for i in range(k)]
    for a, b, c in left:
        cc = (-c) % n
        for r in x:
            r[b] += cc * r[a]
    for a, b, c in reversed(right):
        cc = (-c) % n
        for r in x:
            r[b] += cc * r[a]
    return IntMatrix(x)


def sl_lift(m_bar: IntMatrix, n: int) -> LiftCertificate:
    out = sl_lift_matrix(m_bar, n)
    checks = (
        ("det_exactly_one", det(out) == 1),
        ("congruent_mod_n", congruent_mod(out, m_bar, n)),
    )
    return LiftCertificate(
        "lift-sl",
        {"matrix": m_bar.to_json(), "modulus": str(n)},
        out,
        (),
        checks,
    )


def embed_block(block: IntMatrix, size: int, at: int) -> IntMatrix:
    """``block`` placed on the diagonal of ``I_size`` starting at ``at``."""
    b = block.nrows
    if at + b > size:
        raise DimensionMismatch("block does not fit")
    rows = [[int(i == j) for j in range(size)] for i in range(size)]
    for i in range(b):
        for j in range(b):
            rows[at + i][at + j] = block[i, j]
    return IntMatrix(rows)
