"""Symplectic row/column completion and the Sp_2k(Z/n) -> Sp_2k(Z) lift."""
from __future__ import annotations

from typing import Sequence

from ..errors import BadLength, DimensionMismatch, InternalCheckFailed, NoUnitEntry, NotSymplecticModN
from ..matrix import (
    IntMatrix,
    congruent_mod,
    embed_gl_pair_block,
    embed_sl_pair_block,
    embed_sp_permutation,
    embed_symmetric_shear,
    is_symplectic,
    symplectic_inverse,
)
from ..ring import check_modulus
from ..unital import usc_shift_mod
from .certificate import LiftCertificate
from .sl import embed_block, sl_lift_matrix


def _transposition(k: int, a: int, b: int) -> list[int]:
    perm = list(range(k))
    perm[a], perm[b] = perm[b], perm[a]
    return perm


def _extend_unit_first(row: Sequence[int], k: int) -> IntMatrix:
    """``[[A, AB], [0, (A^T)^-1]]`` with first row ``row``; ``row[0] = +-1``."""
    a1 = row[0]
    top, bot = list(row[:k]), list(row[k:])
    arows = [[int(i == j) for j in range(k)] for i in range(k)]
    arows[0] = [a1] + top[1:]
    if k >= 2:
        arows[1][1] = a1  # a1 is its own inverse
    a = IntMatrix(arows)
    # a1^-1 = a1 and a1^-2 = 1
    brows = [[0] * k for _ in range(k)]
    brows[0][0] = a1 * bot[0] - sum(top[j] * bot[j] for j in range(1, k))
    for j in range(1, k):
        brows[0][j] = brows[j][0] = a1 * bot[j]
    b = IntMatrix(brows)
    # det A = a1^2 = 1 for k >= 2 and a1 = +-1 when k == 1
    return embed_gl_pair_block(a) @ embed_symmetric_shear(b, upper=True)


def sp_extend_row(row: Sequence[int], k: int, position: int = 1) -> IntMatrix:
    """A matrix in Sp_2k(Z) whose row ``position`` (1-based) is ``row``.

    ``row`` must contain an entry equal to +-1.
    """
    row = [int(x) for x in row]
    if k < 1 or len(row) != 2 * k:
        raise BadLength(f"expected a row of length 2k = {2 * k}, got {len(row)}")
    if not 1 <= position <= 2 * k:
        raise BadLength(f"position must be in 1..{2 * k}, got {position}")
    try:
        u = next(i for i, x in enumerate(row) if x in (1, -1))
    except StopIteration:
        raise NoUnitEntry(f"{row} has no entry equal to +-1") from None

    # N moves the unit to index 0 under right multiplication; N^-1 undoes it
    if u < k:
        n = embed_sp_permutation(_transposition(k, 0, u), "diag")
        n_inv = n
    else:
        n = embed_sp_permutation(_transposition(k, 0, u - k), "off_diag")
        n_inv = -n
    moved = (IntMatrix([row]) @ n).row(0)
    h = _extend_unit_first(moved, k)
    g = h @ n_inv

    # bring row 0 to the requested position by a symplectic left factor
    pos = position - 1
    if pos < k:
        q = embed_sp_permutation(_transposition(k, 0, pos), "diag")
    else:
        q = -embed_sp_permutation(_transposition(k, 0, pos - k), "off_diag")
    g = q @ g
    if list(g.row(pos)) != row or not is_symplectic(g):
        raise InternalCheckFailed("row extension did not reproduce its input")
    return g


def sp_extend_column(col: Sequence[int], k: int, position: int = 1) -> IntMatrix:
    """A matrix in Sp_2k(Z) whose column ``position`` (1-based) is ``col``."""
    return sp_extend_row(col, k, position).T


def conditioner(k: int, pivot: int, e: dict[int, int], f: Sequence[int]) -> IntMatrix:
    """``[[E, 0], [F1 E, (E^T)^-1]]`` whose column ``pivot`` is ``(E e_p, f)``.

    ``E = I + sum e_j E_{j,pivot}`` and ``F1`` is the symmetric matrix
    supported on row and column ``pivot`` that makes ``F1 E e_p = f``.
    """
    erows = [[int(i == j) for j in range(k)] for i in range(k)]
    for j, c in e.items():
        if j == pivot:
            raise DimensionMismatch("the pivot has no E coefficient")
        erows[j][pivot] = c
    emat = IntMatrix(erows)
    frows = [[0] * k for _ in range(k)]
    for j in range(k):
        if j != pivot:
            frows[pivot][j] = frows[j][pivot] = f[j]
    frows[pivot][pivot] = f[pivot] - sum(c * f[j] for j, c in e.items())
    shear = embed_symmetric_shear(IntMatrix(frows), upper=False)
    return shear @ embed_sl_pair_block(emat)


class _Reducer:
    """Working matrix ``g = L g0 R (mod n)`` with exact symplectic L, R."""

    def __init__(self, g0: IntMatrix, n: int):
        self.n = n
        self.size = g0.nrows
        self.g = g0.mod(n)
        ident = IntMatrix.identity(self.size)
        self.l_inv = ident
        self.r_inv = ident

    def right(self, x: IntMatrix):
        self.g = (self.g @ x).mod(self.n)
        self.r_inv = symplectic_inverse(x) @ self.r_inv

    def left(self, y: IntMatrix):
        self.g = (y @ self.g).mod(self.n)
        self.l_inv = self.l_inv @ symplectic_inverse(y)


def _require_zero(values, what):
    if any(v for v in values):
        raise InternalCheckFailed(f"{what} should vanish modulo n")


def sp_lift_matrix(m_bar: IntMatrix, n: int) -> IntMatrix:
    """An exact Sp_2k(Z) matrix congruent to ``m_bar`` mod ``n``."""
    check_modulus(n)
    if not m_bar.is_square or m_bar.nrows % 2:
        raise DimensionMismatch(f"expected a 2k x 2k matrix, got {m_bar.shape}")
    if not is_symplectic(m_bar, n):
        raise NotSymplecticModN(f"A^T J A != J modulo {n}")
    k = m_bar.nrows // 2
    if n == 1:
        return IntMatrix.identity(2 * k)
    if k == 1:
        return sl_lift_matrix(m_bar, n)

    w = _Reducer(m_bar, n)
    for p in range(k):
        last = p == k - 1
        g = w.g
        # columns < p of the B-block row vanish by symplecticity
        _require_zero([g[p, k + i] for i in range(p)], "row p of B before the pivot")

        # I: pivot becomes a unit via the column conditioner
        active = [g[p, p]] + [g[p, j] for j in range(p + 1, k)] + [g[p, k + j] for j in range(p, k)]
        shift = usc_shift_mod(active, n)
        coeffs = list(shift.coefficients)
        e = {j: coeffs[j - p - 1] for j in range(p + 1, k) if coeffs[j - p - 1]}
        f = [0] * p + coeffs[k - p - 1:]
        if e or any(f):
            if p == 0:
                col = [1] + [e.get(j, 0) for j in range(1, k)] + f
                w.right(sp_extend_column(col, k, 1))
            else:
                w.right(conditioner(k, p, e, f))
        t = w.g[p, p]

        # II: normalize the pivot to 1 with a lifted diag(t^-1, t) block
        if not last:
            ti = pow(t, -1, n)
            u2 = sl_lift_matrix(IntMatrix([[ti, 0], [0, t]]), n)
            w.right(embed_sl_pair_block(embed_block(u2, k, p)))
            t = 1

        # III: clear row p and column p of A
        g = w.g
        if not last:
            v = [[int(i == j) for j in range(k)] for i in range(k)]
            for j in range(p + 1, k):
                v[p][j] = (-g[p, j]) % n
            w.right(embed_sl_pair_block(IntMatrix(v)))
            g = w.g
            wm = [[int(i == j) for j in range(k)] for i in range(k)]
            for r in range(p + 1, k):
                wm[r][p] = (-g[r, p]) % n
            w.left(embed_sl_pair_block(IntMatrix(wm)))
        g = w.g
        _require_zero(
            [g[p, j] for j in range(k) if j != p] + [g[r, p] for r in range(k) if r != p],
            "off-diagonal pivot row/column of A",
        )

        # IV (VIII at the last pivot): t-adjusted shears clear row p of B
        # and column p of C
        ti = pow(t, -1, n)
        s = [[0] * k for _ in range(k)]
        for j in range(k):
            s[p][j] = s[j][p] = (-ti * g[p, k + j]) % n
        w.right(embed_symmetric_shear(IntMatrix(s), upper=True))
        g = w.g
        c = [[0] * k for _ in range(k)]
        for j in range(k):
            c[p][j] = c[j][p] = (-ti * g[k + j, p]) % n
        w.left(embed_symmetric_shear(IntMatrix(c), upper=False))
        g = w.g
        _require_zero([g[p, k + j] for j in range(k)], "row p of B")
        _require_zero([g[k + r, p] for r in range(k)], "column p of C")

    # now g = diag(1, ..., 1, t, 1, ..., 1, t^-1) mod n
    t = w.g[k - 1, k - 1]
    expected = [1] * (k - 1) + [t] + [1] * (k - 1) + [pow(t, -1, n)]
    if w.g != IntMatrix.diag(expected).mod(n):
        raise InternalCheckFailed("symplectic reduction did not reach a diagonal")

    # IX: lift [[t, 0], [0, t^-1]] and place it at (k, 2k)
    x = sl_lift_matrix(IntMatrix([[t, 0], [0, pow(t, -1, n)]]), n)
    fin = [[int(i == j) for j in range(2 * k)] for i in range(2 * k)]
    a, b = k - 1, 2 * k - 1
    fin[a][a], fin[a][b], fin[b][a], fin[b][b] = x[0, 0], x[0, 1], x[1, 0], x[1, 1]
    return w.l_inv @ IntMatrix(fin) @ w.r_inv


def sp_lift(m_bar: IntMatrix, n: int) -> LiftCertificate:
    out = sp_lift_matrix(m_bar, n)
    checks = (
        ("symplectic_exact", is_symplectic(out)),
        ("congruent_mod_n", congruent_mod(out, m_bar, n)),
    )
    return LiftCertificate(
        "lift-sp",
        {"matrix": m_bar.to_json(), "modulus": str(n)},
        out,
        (),
        checks,
    )


def extension_certificate(vec: Sequence[int], k: int, position: int, column: bool) -> LiftCertificate:
    out = sp_extend_column(vec, k, position) if column else sp_extend_row(vec, k, position)
    got = out.col(position - 1) if column else out.row(position - 1)
    checks = (
        ("symplectic_exact", is_symplectic(out)),
        ("column_embedded" if column else "row_embedded", list(got) == [int(x) for x in vec]),
    )
    return LiftCertificate(
        "extend-col" if column else "extend-row",
        {"vector": [str(x) for x in vec], "k": k, "position": position},
        out,
        (),
        checks,
    )
