"""Integer arithmetic: Bezout data, CRT, inverses and factorization.

Python ``int`` is the arbitrary-precision scalar throughout. An ideal of the
integers is passed around as its nonnegative generator ``n``; ``n == 1`` is
the unit ideal and every congruence modulo 1 holds.
"""
from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Sequence

from sympy import factorint, isprime

from .errors import (
    FactorizationBudgetExceeded,
    NonCoprimeModuli,
    NotAUnit,
    OutOfRange,
    PreconditionViolated,
)

# Largest value factorize() accepts.
FACTOR_BUDGET = 2**96

Factorization = list[tuple[int, int]]


def check_modulus(n: int, *, minimum: int = 1, name: str = "modulus") -> int:
    """Validate an ideal generator and return it as an int."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise PreconditionViolated(f"{name} must be an integer, got {n!r}")
    if n < minimum:
        raise PreconditionViolated(f"{name} must be >= {minimum}, got {n}")
    return n


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid.

    Returns ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y == g``.
    ``egcd(0, 0) == (0, 0, 0)``.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """Bezout coefficients for a list, accumulated left to right.

    Returns ``(g, coeffs)`` with ``g = gcd(values)`` and
    ``sum(c*v) == g``.
    """
    g, coeffs = 0, []
    for v in values:
        g2, x, y = egcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    return g, coeffs


def is_unit_mod(a: int, n: int) -> bool:
    """True iff ``a`` is invertible modulo ``n`` (always true for n == 1)."""
    check_modulus(n)
    return math.gcd(a, n) == 1


def mod_inverse(a: int, n: int) -> int:
    """Least nonnegative ``z`` with ``a*z = 1 (mod n)``.

    For ``n == 1`` returns 0, the only residue.
    """
    check_modulus(n)
    if math.gcd(a, n) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 0
    return pow(a, -1, n)


def check_pairwise_coprime(moduli: Sequence[int]) -> None:
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise NonCoprimeModuli(
                    f"moduli {moduli[i]} and {moduli[j]} share the factor "
                    f"{math.gcd(moduli[i], moduli[j])}"
                )


def crt_list(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Solve ``x = residues[i] (mod moduli[i])`` for pairwise coprime moduli.

    Returns the least nonnegative solution, i.e. ``0 <= x < prod(moduli)``.
    """
    if len(residues) != len(moduli) or not moduli:
        raise PreconditionViolated("residues and moduli must be nonempty lists of equal length")
    for n in moduli:
        check_modulus(n)
    check_pairwise_coprime(moduli)
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        if n == 1:
            continue
        # x + m*s = r (mod n)
        s = ((r - x) * pow(m, -1, n)) % n
        x += m * s
        m *= n
    return x % m


def prod(values: Iterable[int]) -> int:
    return math.prod(values)


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def factorize(m: int) -> Factorization:
    """Prime factorization as ascending ``(prime, exponent)`` pairs."""
    if isinstance(m, bool) or not isinstance(m, int):
        raise OutOfRange(f"expected an integer, got {m!r}")
    if m < 2:
        raise OutOfRange(f"factorize requires m >= 2, got {m}")
    if m > FACTOR_BUDGET:
        raise FactorizationBudgetExceeded(f"{m} exceeds the factorization budget 2**96")
    return sorted((int(p), int(e)) for p, e in factorint(m).items())


def prime_divisors(m: int) -> list[int]:
    """Distinct primes dividing ``|m|``; empty for ``|m| == 1``."""
    m = abs(m)
    if m == 1:
        return []
    return [p for p, _ in factorize(m)]
