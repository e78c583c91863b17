"""Matrices in SL or Sp over Z whose i-th row is prescribed modulo I_i.

Both constructions right-multiply the target by exact group elements, which
moves every row within its unital orbit, and replace rows by congruent rows
(mod their own ideal) when that simplifies things. The answer is the final
exact matrix times the inverse of the accumulated right multiplier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import BadShape, InternalCheckFailed, PreconditionViolated, RowNotUnital
from ..matrix import (
    IntMatrix,
    embed_sl_pair_block,
    embed_symmetric_shear,
    inverse_unimodular,
    is_symplectic,
    symplectic_inverse,
)
from ..ring import check_modulus, check_pairwise_coprime, crt_list, egcd, gcd_all, prod
from ..unital import bring_unit, diag_det_one
from .certificate import LiftCertificate
from .sl import sl_lift_matrix
from .symplectic import conditioner, sp_lift_matrix


@dataclass(frozen=True)
class CongruenceTarget:
    """Rows with one ideal each; row ``i`` is prescribed modulo ``ideals[i]``."""

    rows: tuple[tuple[int, ...], ...]
    ideals: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        ideals = tuple(self.ideals)
        if not rows:
            raise BadShape("a target needs at least one row")
        if any(len(r) != len(rows) for r in rows):
            raise BadShape(f"target must be square, got {len(rows)} rows of lengths {[len(r) for r in rows]}")
        if len(ideals) != len(rows):
            raise BadShape(f"{len(ideals)} ideals for {len(rows)} rows")
        for n in ideals:
            check_modulus(n, name="ideal")
        check_pairwise_coprime(ideals)
        for i, r in enumerate(rows):
            if gcd_all(r) != 1:
                raise RowNotUnital(f"row {i} = {list(r)} is not unital")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ideals", ideals)

    @property
    def size(self) -> int:
        return len(self.rows)

    def matches(self, m: IntMatrix) -> bool:
        return all(
            (x - y) % n == 0
            for row, target, n in zip(m.rows(), self.rows, self.ideals)
            for x, y in zip(row, target)
        )

    def to_json(self) -> dict:
        return {
            "rows": [[str(x) for x in r] for r in self.rows],
            "ideals": [str(n) for n in self.ideals],
        }


def _reduce_row(row, n):
    return [x % n for x in row] if n > 1 else list(row)


def _sl_core(rows: Sequence[Sequence[int]], ideals: Sequence[int]) -> IntMatrix:
    """The SL construction; rows need only be unital modulo their ideals."""
    size = len(rows)
    total = prod(ideals)
    if total == 1:
        return IntMatrix.identity(size)
    a = [_reduce_row(r, n) for r, n in zip(rows, ideals)]
    rinv = [[int(i == j) for j in range(size)] for i in range(size)]

    def col_op(src, dst, c):
        # column dst += c * column src; R^-1 gains row src -= c * row dst
        if not c:
            return
        for r, n in zip(a, ideals):
            r[dst] += c * r[src]
            if n > 1:
                r[dst] %= n
        rs, rd = rinv[src], rinv[dst]
        for j in range(size):
            rs[j] -= c * rd[j]

    done = 1
    for i in range(size):
        n = ideals[i]
        if n == 1:
            continue
        # pivot (i, i) becomes a unit mod I_i with multipliers in I_0...I_{i-1}
        w = bring_unit(a[i], i, n, done)
        others = [j for j in range(size) if j != i]
        for j, c in zip(others, w.coefficients):
            col_op(j, i, c)
        z = pow(a[i][i], -1, n)
        # clear row i mod I_i with multipliers that vanish mod I_0...I_{i-1}
        for j in others:
            col_op(i, j, crt_list([(-z * a[i][j]) % n, 0], [n, done]))
        _check_progress(a, ideals, i)
        done *= n

    d = diag_det_one([a[i][i] for i in range(size)], ideals)
    b = sl_lift_matrix(IntMatrix.diag(d), total)
    return _compact(b @ IntMatrix(rinv), total, sl_lift_matrix)


def _compact(m: IntMatrix, total: int, lift) -> IntMatrix:
    """Re-lift ``m`` from its reduction mod ``total``.

    Rows keep their residues mod every ideal dividing ``total``; the
    back-substituted product can be hundreds of digits long, the re-lift
    is not.
    """
    small = lift(m.mod(total), total)
    return small if small.max_abs() < m.max_abs() else m


def _check_progress(a, ideals, upto, full_rows=None):
    """The three properties every row iteration must preserve.

    ``a`` is the square block holding the pivots; unitality is checked on
    ``full_rows`` (default ``a``).
    """
    for l in range(upto + 1):
        n = ideals[l]
        if n == 1:
            continue
        if math.gcd(a[l][l], n) != 1:
            raise InternalCheckFailed(f"pivot {l} is not a unit modulo {n}")
        if any(a[l][j] % n for j in range(len(a)) if j != l):
            raise InternalCheckFailed(f"row {l} has off-diagonal entries outside its ideal")
    for r, n in zip(full_rows or a, ideals):
        if math.gcd(gcd_all(r), n) != 1:
            raise InternalCheckFailed("a row stopped being unital modulo its ideal")


def sl_multi_congruence_matrix(target: CongruenceTarget) -> IntMatrix:
    return _sl_core(target.rows, target.ideals)


def sl_multi_congruence_lift(target: CongruenceTarget) -> LiftCertificate:
    out = sl_multi_congruence_matrix(target)
    checks = (
        ("det_exactly_one", out.det() == 1),
        ("rows_congruent", target.matches(out)),
    )
    return LiftCertificate("multi-lift-sl", target.to_json(), out, (), checks)


class _SpWork:
    """Working rows plus the inverse of the accumulated right multiplier."""

    def __init__(self, rows, ideals):
        self.ideals = list(ideals)
        self.exact = [False] * len(rows)
        self.m = [_reduce_row(r, n) for r, n in zip(rows, ideals)]
        self.xinv = IntMatrix.identity(len(rows))

    def right(self, x: IntMatrix):
        prod_rows = (IntMatrix(self.m) @ x).tolist()
        self.m = [
            r if ex else _reduce_row(r, n) for r, n, ex in zip(prod_rows, self.ideals, self.exact)
        ]
        self.xinv = symplectic_inverse(x) @ self.xinv


def _symmetrize(values, ideals):
    """Replace ``v[i][j], v[j][i]`` by one value congruent to each mod its row ideal.

    With ``q_ij + q_ji = 1``, ``q_ij`` in ``I_i`` and ``q_ji`` in ``I_j``, the
    value ``b_ij + q_ij (b_ji - b_ij)`` is ``b_ij`` mod ``I_i`` and ``b_ji``
    mod ``I_j``.
    """
    k = len(values)
    out = [list(r) for r in values]
    for i in range(k):
        for j in range(i + 1, k):
            ni, nj = ideals[i], ideals[j]
            _, x, _ = egcd(ni, nj)
            q_ij = ni * x
            bij, bji = values[i][j], values[j][i]
            v = (bij + q_ij * (bji - bij)) % (ni * nj)
            out[i][j] = out[j][i] = v
    return out


def _sp_top_pivots(w: _SpWork, k: int, ideals: Sequence[int], offset: int):
    """Make the pivot of rows ``offset + i`` a unit modulo its ideal.

    The pivot sits in column ``i`` of the row's first block. Conditioner
    coefficients lie in the product of the earlier ideals of the band, so
    earlier rows keep their residues.
    """
    done = 1
    for i in range(k):
        n = ideals[i]
        if n == 1:
            continue
        row = w.m[offset + i]
        others = [j for j in range(k) if j != i]
        vec = [row[i]] + [row[j] for j in others] + [row[k + j] for j in range(k)]
        sh = bring_unit(vec, 0, n, done)
        coeffs = list(sh.coefficients)
        e = {j: c for j, c in zip(others, coeffs[: k - 1]) if c}
        f = coeffs[k - 1:]
        if e or any(f):
            w.right(conditioner(k, i, e, f))
        yield i, n, done
        done *= n


def sp_multi_congruence_matrix(target: CongruenceTarget) -> IntMatrix:
    size = target.size
    if size % 2:
        raise BadShape(f"symplectic targets have 2k rows, got {size}")
    k = size // 2
    ideals = list(target.ideals)
    if prod(ideals) == 1:
        return IntMatrix.identity(size)
    if k == 1:
        # Sp_2 = SL_2; the diagonal split below needs two slots per band
        return _sl_core(target.rows, ideals)
    top, bot = ideals[:k], ideals[k:]
    p_top, p_bot = prod(top), prod(bot)
    w = _SpWork(target.rows, ideals)

    # A: with no constraint on the top band its A-block becomes I
    if p_top == 1:
        a_tilde = IntMatrix.identity(k)
    else:
        # B-D: unit pivots and cleared rows in the A-block of the top band
        for i, n, done in _sp_top_pivots(w, k, top, 0):
            z = pow(w.m[i][i], -1, n)
            u = [[int(r == c) for c in range(k)] for r in range(k)]
            for j in range(k):
                if j != i:
                    u[i][j] = crt_list([(-z * w.m[i][j]) % n, 0], [n, done])
            w.right(embed_sl_pair_block(IntMatrix(u)))
            _check_progress([r[:k] for r in w.m[:k]], top, i, w.m[:k])
        # E-F: replace the A-block by an SL_k(Z) matrix with the same rows
        d = diag_det_one([w.m[i][i] for i in range(k)], top)
        a_tilde = sl_lift_matrix(IntMatrix.diag(d), p_top)
    for i in range(k):
        w.m[i][:k] = list(a_tilde.row(i))

    # G: A-block to I
    w.right(embed_sl_pair_block(inverse_unimodular(a_tilde)))
    # H: symmetric B, then I: shear it away
    b = _symmetrize([r[k:] for r in w.m[:k]], top)
    for i in range(k):
        w.m[i][k:] = b[i]
    w.right(embed_symmetric_shear(IntMatrix([[-x for x in r] for r in b]), upper=True))
    _expect(all(w.m[i] == [int(i == j) for j in range(size)] for i in range(k)), "top band is not [I, 0]")

    # J: the top band stays exact from here on, it becomes [U, 0]
    for i in range(k):
        w.exact[i] = True
    if p_bot == 1:
        for i in range(k):
            w.m[k + i] = [int(j == k + i) for j in range(size)]
    else:
        for _ in _sp_top_pivots(w, k, bot, k):
            pass
        s = [0] * k
        for i in range(k):
            n = bot[i]
            if n == 1:
                continue
            c, dii = w.m[k + i][i], w.m[k + i][k + i]
            # s in I_top with c*s + d = 1 mod I_{k+i}
            y = ((1 - dii) * pow(c * p_top, -1, n)) % n
            s[i] = p_top * y
        w.right(embed_symmetric_shear(IntMatrix.diag(s), upper=True))
        for i in range(k):
            _expect(all(x % p_top == 0 for x in w.m[i][k:]), "U S is not in the top ideals")
            w.m[i][k:] = [0] * k
            if bot[i] > 1:
                _expect((w.m[k + i][k + i] - 1) % bot[i] == 0, "d_ii is not 1 mod its ideal")
                w.m[k + i][k + i] = 1
        d_rows = [r[k:] for r in w.m[k:]]
        v = _sl_core(d_rows, bot) if k > 1 else IntMatrix([[1]])
        for i in range(k):
            w.m[k + i][k:] = list(v.row(i))
        w.right(embed_sl_pair_block(v.T))
        c_sym = _symmetrize([r[:k] for r in w.m[k:]], bot)
        for i in range(k):
            w.m[k + i][:k] = c_sym[i]
        # K: shear C away
        w.right(embed_symmetric_shear(IntMatrix([[-x for x in r] for r in c_sym]), upper=False))
    _expect(
        all(w.m[k + i] == [int(j == k + i) for j in range(size)] for i in range(k)),
        "bottom band is not [0, I]",
    )

    # L: V = U^-1 mod I_top and V = I mod I_bot, lifted to SL_k(Z)
    u = IntMatrix([r[:k] for r in w.m[:k]])
    _expect(u.det() == 1, "U is not in SL_k(Z)")
    u_inv = inverse_unimodular(u)
    vbar = IntMatrix(
        [
            [crt_list([u_inv[r, c], int(r == c)], [p_top, p_bot]) for c in range(k)]
            for r in range(k)
        ]
    )
    v = sl_lift_matrix(vbar, p_top * p_bot)
    w.right(embed_sl_pair_block(v))
    for i in range(k):
        n = top[i]
        _expect(all((x - int(j == i)) % n == 0 for j, x in enumerate(w.m[i])), "top band is not I")
        n = bot[i]
        _expect(
            all((x - int(j == k + i)) % n == 0 for j, x in enumerate(w.m[k + i])),
            "bottom band is not I",
        )
    return _compact(w.xinv, prod(ideals), sp_lift_matrix)


def _expect(cond: bool, what: str):
    if not cond:
        raise InternalCheckFailed(what)


def sp_multi_congruence_lift(target: CongruenceTarget) -> LiftCertificate:
    out = sp_multi_congruence_matrix(target)
    checks = (
        ("symplectic_exact", is_symplectic(out)),
        ("rows_congruent", target.matches(out)),
    )
    return LiftCertificate("multi-lift-sp", target.to_json(), out, (), checks)


def ensure_target(rows, ideals) -> CongruenceTarget:
    if isinstance(rows, CongruenceTarget):
        return rows
    try:
        return CongruenceTarget(tuple(tuple(r) for r in rows), tuple(ideals))
    except TypeError as exc:
        raise PreconditionViolated(str(exc)) from exc
