"""Matrices in SL or Sp whose rows land in prescribed projective classes.

Each target point is replaced by a representative unital over Z, the
multi-ideal congruence lift matches those representatives row by row, and
the unit witness for every row is recovered from the equivalence test.
"""
from __future__ import annotations

from typing import Sequence

from ..errors import BadShape, InternalCheckFailed
from ..matrix import IntMatrix, det, is_symplectic
from ..projective import ProjPoint, equivalent_points, unital_representative
from ..ring import check_pairwise_coprime
from .certificate import LiftCertificate
from .congruence import CongruenceTarget, sl_multi_congruence_matrix, sp_multi_congruence_matrix


def _target(points: Sequence[ProjPoint]) -> CongruenceTarget:
    if not points:
        raise BadShape("need at least one point")
    size = len(points)
    for i, p in enumerate(points):
        if len(p) != size:
            raise BadShape(f"point {i} has {len(p)} coordinates, expected {size}")
    check_pairwise_coprime([p.modulus for p in points])
    reps = [unital_representative(p) for p in points]
    return CongruenceTarget(tuple(r.coords for r in reps), tuple(p.modulus for p in points))


def row_witnesses(m: IntMatrix, points: Sequence[ProjPoint]) -> list[int | None]:
    """For each row, a unit ``lam`` with ``row = lam**w * target`` mod its ideal, or None."""
    lams = []
    for row, p in zip(m.rows(), points):
        n = p.modulus
        image = ProjPoint(row if n == 1 else tuple(x % n for x in row), n, p.weights)
        ok, lam = equivalent_points(p, image)
        lams.append(lam if ok else None)
    return lams


def _certificate(op: str, points, out: IntMatrix, group_check) -> LiftCertificate:
    lams = row_witnesses(out, points)
    if any(lam is None for lam in lams):
        raise InternalCheckFailed(f"{op}: a row left its target class")
    return LiftCertificate(
        op,
        {"points": [p.to_json() for p in points]},
        out,
        tuple(lams),
        (group_check, ("rows_in_classes", True)),
    )


def sl_surject_projective(points: Sequence[ProjPoint]) -> LiftCertificate:
    out = sl_multi_congruence_matrix(_target(points))
    return _certificate("surject-sl", points, out, ("det_exactly_one", det(out) == 1))


def sp_surject_projective(points: Sequence[ProjPoint]) -> LiftCertificate:
    if len(points) % 2:
        raise BadShape(f"need an even number of points, got {len(points)}")
    out = sp_multi_congruence_matrix(_target(points))
    return _certificate("surject-sp", points, out, ("symplectic_exact", is_symplectic(out)))
