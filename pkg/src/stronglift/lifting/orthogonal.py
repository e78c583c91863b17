"""Which projective classes no row of an indefinite orthogonal group can reach.

A row of an integer matrix preserving ``x_1^2 + ... + x_p^2 - ... - x_{p+q}^2``
has form value +1 (first ``p`` rows) or -1 (last ``q`` rows). Scaling a
class by a unit ``g`` multiplies the value by ``g^2``, so a class whose
value is not ``+-g^2`` modulo a prime is out of reach.
"""
from __future__ import annotations

from ..errors import BadLength, NotPrimeModulus, PreconditionViolated
from ..projective import ProjPoint
from ..ring import is_prime

BANDS = ("first_p", "last_q")


def form_value(coords, p: int, r: int) -> int:
    return (sum(x * x for x in coords[:p]) - sum(x * x for x in coords[p:])) % r


def orthogonal_obstruction(point: ProjPoint, p: int, q: int, band: str = "first_p") -> bool:
    """True when no row in ``band`` of an O(p, q)(Z) matrix lies in ``point``'s class."""
    r = point.modulus
    if r == 2 or not is_prime(r):
        raise NotPrimeModulus(f"modulus must be an odd prime, got {r}")
    if p < 0 or q < 0 or len(point) != p + q:
        raise BadLength(f"point has {len(point)} coordinates, expected p + q = {p + q}")
    if any(w != 1 for w in point.weights):
        raise PreconditionViolated("the form value is a class invariant only for weights all 1")
    if band not in BANDS:
        raise PreconditionViolated(f"band must be one of {BANDS}, got {band!r}")
    value = form_value(point.coords, p, r)
    if value == 0:
        return True
    eps = 1 if band == "first_p" else -1
    # Euler's criterion: a nonzero square has (r-1)/2-th power 1
    return pow(eps * value % r, (r - 1) // 2, r) != 1
