"""Unit extraction over the integers.

These are the constructive lemmas every lift relies on: shifting an entry of
a unital vector by the ideal generated by the others until it becomes a unit
modulo a target, perturbing a vector by multiples of an ideal until it is
unital over the integers, and splitting a determinant condition across
coprime moduli.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NotAUnit, PreconditionViolated
from .ring import (
    bezout,
    check_modulus,
    check_pairwise_coprime,
    crt_list,
    egcd,
    gcd_all,
    prime_divisors,
)


@dataclass(frozen=True)
class ShiftWitness:
    """``result = entries[pivot] + sum(coefficients[j] * other entries)``.

    ``coefficients`` lists the multipliers of the non-pivot entries in their
    original order.
    """

    coefficients: tuple[int, ...]
    result: int
    modulus: int

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "result": str(self.result),
            "modulus": str(self.modulus),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ShiftWitness":
        return cls(
            tuple(int(c) for c in data["coefficients"]),
            int(data["result"]),
            int(data["modulus"]),
        )


def is_unital(entries: Sequence[int]) -> bool:
    if not entries:
        raise PreconditionViolated("is_unital needs at least one entry")
    return gcd_all(entries) == 1


def is_unital_mod(entries: Sequence[int], n: int) -> bool:
    """Unital in Z/n (for n == 1, unital over Z)."""
    if n == 1:
        return gcd_all(entries) == 1
    return math.gcd(gcd_all(entries), n) == 1


def coprime_shift(a: int, b: int, m: int) -> int:
    """Return ``n0`` with ``gcd(a + n0*b, m) == 1``.

    For each prime ``q | m`` not dividing ``b`` the progression ``a + n*b``
    hits ``q`` exactly when ``n = -a/b (mod q)``; ``n0`` is the CRT solution
    of ``n0 = -a/b + 1 (mod q)`` over those primes. Primes dividing ``b``
    never divide ``a + n*b``.
    """
    if m == 0:
        raise PreconditionViolated("coprime_shift needs a nonzero modulus")
    if math.gcd(a, b) != 1:
        raise PreconditionViolated(f"gcd({a}, {b}) != 1")
    if math.gcd(a, m) == 1:
        return 0
    residues, moduli = [], []
    for q in prime_divisors(m):
        if b % q == 0:
            continue
        forbidden = (-a * pow(b, -1, q)) % q
        residues.append((forbidden + 1) % q)
        moduli.append(q)
    if not moduli:
        return 0
    return crt_list(residues, moduli)


def usc_shift(entries: Sequence[int], target: int) -> ShiftWitness:
    """Shift ``entries[0]`` by the ideal of the rest into a unit mod ``target``.

    ``d`` is the gcd of ``entries[1:]`` written as a Bezout combination; since
    the vector is unital, ``gcd(entries[0], d) == 1`` and a coprime shift
    along ``entries[0] + n0*d`` finishes.
    """
    check_modulus(target, minimum=2, name="target")
    if len(entries) < 2:
        raise PreconditionViolated("usc_shift needs at least two entries")
    if gcd_all(entries) != 1:
        raise PreconditionViolated(f"{list(entries)} is not unital")
    a1, rest = entries[0], entries[1:]
    d, bez = bezout(rest)
    n0 = coprime_shift(a1, d, target)
    coeffs = tuple(n0 * c for c in bez)
    result = a1 + n0 * d
    return ShiftWitness(coeffs, result, target)


def usc_shift_mod(entries: Sequence[int], target: int) -> ShiftWitness:
    """Like :func:`usc_shift` but the input need only be unital mod ``target``.

    A multiple ``t`` of ``target`` is adjoined so the extended vector is
    unital over Z; the shift found for it is then reduced by dropping the
    ``t`` component, which changes the result by a multiple of ``target``.
    """
    check_modulus(target, minimum=2, name="target")
    if not entries:
        raise PreconditionViolated("usc_shift_mod needs at least one entry")
    if math.gcd(gcd_all(entries), target) != 1:
        raise PreconditionViolated(f"{list(entries)} is not unital modulo {target}")
    if math.gcd(entries[0], target) == 1:
        return ShiftWitness((0,) * (len(entries) - 1), entries[0], target)
    _, bez = bezout(list(entries) + [target])
    t = bez[-1] * target
    extended = usc_shift(list(entries) + [t], target)
    coeffs = tuple(c % target for c in extended.coefficients[:-1])
    result = entries[0] + sum(c * e for c, e in zip(coeffs, entries[1:]))
    # both differ by coefficients[-1] * t, a multiple of target
    assert math.gcd(result, target) == 1
    return ShiftWitness(coeffs, result, target)


def _unit_index(x: Sequence[int], n: int) -> int:
    for i, v in enumerate(x):
        if math.gcd(v, n) == 1:
            return i
    raise PreconditionViolated(f"no entry of {list(x)} is a unit modulo {n}")


def cmh_witness(x: Sequence[int], n: int) -> list[int]:
    """Unital multipliers ``a`` with ``sum(a_i * x_i) = 1 (mod n)``.

    Uses the lowest-index unit ``x_u``: ``a_u = x_u^{-1} mod n`` and
    ``a_v = 1 - a_u*x_u`` for one other index ``v``; all other ``a_i = 0``.
    """
    check_modulus(n, minimum=2, name="ideal")
    if len(x) < 2:
        raise PreconditionViolated("cmh needs at least two entries")
    if not is_unital_mod(x, n):
        raise PreconditionViolated(f"{list(x)} is not unital modulo {n}")
    u = _unit_index(x, n)
    v = 0 if u != 0 else 1
    inv = pow(x[u], -1, n)
    a = [0] * len(x)
    a[u] = inv
    a[v] = 1 - inv * x[u]
    return a


def cmh_perturb(x: Sequence[int], n: int) -> list[int]:
    """Multiples ``t_i`` of ``n`` making ``x + t`` unital over Z.

    ``x`` must be unital mod ``n`` with at least one entry a unit mod ``n``.
    Already-unital input gets the zero perturbation.
    """
    a = cmh_witness(x, n)
    if gcd_all(x) == 1:
        return [0] * len(x)
    u = _unit_index(x, n)
    v = 0 if u != 0 else 1
    # a . x = 1 - T with T in nZ; b . a = 1 with b_u = x_u, b_v = 1
    T = 1 - sum(ai * xi for ai, xi in zip(a, x))
    b = [0] * len(x)
    b[u] = x[u]
    b[v] = 1
    return [T * bi for bi in b]


def unital_lift(x: Sequence[int], n: int) -> list[int]:
    """A vector congruent to ``x`` mod ``n`` that is unital over Z.

    ``x`` need only be unital mod ``n``. Column 0 is first shifted into a
    unit (an SL column operation), the perturbation is applied, and the
    column operation is undone.
    """
    x = list(x)
    if gcd_all(x) == 1:
        return x
    check_modulus(n, minimum=2)
    if not is_unital_mod(x, n):
        raise PreconditionViolated(f"{x} is not unital modulo {n}")
    if len(x) == 1:
        r = x[0] % n
        if r == 1 or r == n - 1:
            return [1 if r == 1 else -1]
        raise PreconditionViolated(f"no unital integer lift of [{x[0]}] modulo {n}")
    w = usc_shift_mod(x, n)
    y = [w.result] + x[1:]
    t = cmh_perturb(y, n)
    z = [yi + ti for yi, ti in zip(y, t)]
    z[0] -= sum(c * zj for c, zj in zip(w.coefficients, z[1:]))
    return z


def bring_unit(row: Sequence[int], pivot: int, target: int, coeff_ideal: int) -> ShiftWitness:
    """Make ``row[pivot]`` a unit mod ``target`` using multipliers in ``coeff_ideal``.

    With ``q1 + q2 = 1``, ``q1`` in ``target*Z`` and ``q2`` in
    ``coeff_ideal*Z``, any USC shift ``y`` scaled to ``q2*y`` stays congruent
    mod ``target`` and lies in ``coeff_ideal``. ``coeff_ideal == 1`` places
    no constraint on the multipliers.
    """
    check_modulus(target, minimum=2, name="target")
    check_modulus(coeff_ideal, name="coeff_ideal")
    if not 0 <= pivot < len(row):
        raise PreconditionViolated(f"pivot {pivot} out of range for a row of length {len(row)}")
    if math.gcd(target, coeff_ideal) != 1:
        raise PreconditionViolated(f"ideals {target} and {coeff_ideal} are not coprime")
    if not is_unital_mod(row, target):
        raise PreconditionViolated(f"{list(row)} is not unital modulo {target}")
    others = [row[j] for j in range(len(row)) if j != pivot]
    if math.gcd(row[pivot], target) == 1:
        return ShiftWitness((0,) * len(others), row[pivot], target)
    shift = usc_shift_mod([row[pivot]] + others, target)
    _, _, y = egcd(target, coeff_ideal)
    q2 = coeff_ideal * y
    # reducing mod target*coeff_ideal keeps both congruences
    coeffs = tuple((q2 * c) % (target * coeff_ideal) for c in shift.coefficients)
    result = row[pivot] + sum(c * e for c, e in zip(coeffs, others))
    return ShiftWitness(coeffs, result, target)


def diag_det_one(a: Sequence[int], moduli: Sequence[int]) -> list[int]:
    """``d_i = a_i (mod moduli_i)`` with ``prod(d) = 1 (mod prod(moduli))``.

    Unit-ideal slots are free; with a single proper modulus its inverse is
    parked in a free slot, otherwise the first two proper slots carry each
    other's inverses and the rest are 1 away from their own modulus.
    """
    if len(a) != len(moduli) or not a:
        raise PreconditionViolated("values and moduli must be nonempty lists of equal length")
    for n in moduli:
        check_modulus(n)
    check_pairwise_coprime(moduli)
    for ai, n in zip(a, moduli):
        if n > 1 and math.gcd(ai, n) != 1:
            raise NotAUnit(f"{ai} is not a unit modulo {n}")
    k = len(a)
    proper = [i for i in range(k) if moduli[i] > 1]
    d = [1] * k
    if not proper:
        return d
    if len(proper) == 1:
        p = proper[0]
        n = moduli[p]
        d[p] = a[p] % n
        free = [i for i in range(k) if i != p]
        if not free:
            if d[p] != 1:
                raise PreconditionViolated(
                    f"a single slot needs a = 1 modulo {n}; got {a[p]}"
                )
            return d
        d[free[0]] = pow(a[p], -1, n)
        return d
    inv = {i: pow(a[i], -1, moduli[i]) for i in proper}
    pm = [moduli[i] for i in proper]
    p1, p2 = proper[0], proper[1]
    d[p1] = crt_list([a[p1]] + [inv[i] for i in proper[1:]], pm)
    d[p2] = crt_list([inv[p1], a[p2]] + [1] * (len(proper) - 2), pm)
    for i in proper[2:]:
        d[i] = crt_list([a[i] if j == i else 1 for j in proper], pm)
    return d


__all__ = [
    "ShiftWitness",
    "bring_unit",
    "cmh_perturb",
    "cmh_witness",
    "coprime_shift",
    "diag_det_one",
    "is_unital",
    "is_unital_mod",
    "unital_lift",
    "usc_shift",
    "usc_shift_mod",
]
