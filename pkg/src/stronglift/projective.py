"""Weighted generalized projective spaces over Z modulo n.

A point is a tuple that is unital modulo ``n``; two points are equivalent
when ``b_i = lam**m_i * a_i (mod n)`` for one unit ``lam``. Equivalence
witnesses come from scanning units, so everything here is desk scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Sequence

from .errors import (
    BadFactorization,
    BudgetExceeded,
    InternalCheckFailed,
    InvalidInput,
    NonCoprimeModuli,
    PreconditionViolated,
    ShapeMismatch,
)
from .matrix import ElementaryOp
from .ring import check_modulus, check_pairwise_coprime, crt_list, gcd_all, is_prime, prod
from .unital import cmh_perturb, is_unital_mod, unital_lift, usc_shift_mod

# full unit scans for composite moduli up to this size; primes go further
SCAN_BUDGET = 10**4
PRIME_SCAN_BUDGET = 10**6

# enumeration limits: modulus, tuple length and total tuple count
ENUM_MAX_MODULUS = 101
ENUM_MAX_LENGTH = 4
ENUM_MAX_TUPLES = 2 * 10**6


@dataclass(frozen=True)
class ProjPoint:
    """A class representative: ``coords`` unital modulo ``modulus``.

    For ``modulus == 1`` the coordinates must be unital over Z.
    """

    coords: tuple[int, ...]
    modulus: int
    weights: tuple[int, ...] = field(default=())

    def __post_init__(self):
        coords = tuple(_as_int(c) for c in self.coords)
        if not coords:
            raise PreconditionViolated("a point needs at least one coordinate")
        weights = tuple(self.weights) if self.weights else (1,) * len(coords)
        if len(weights) != len(coords):
            raise ShapeMismatch(f"{len(weights)} weights for {len(coords)} coordinates")
        if any(isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in weights):
            raise PreconditionViolated(f"weights must be positive integers, got {list(weights)}")
        check_modulus(self.modulus)
        if not is_unital_mod(coords, self.modulus):
            raise PreconditionViolated(
                f"{list(coords)} is not unital modulo {self.modulus}"
            )
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.coords)

    def to_json(self) -> dict:
        return {
            "coords": [str(c) for c in self.coords],
            "modulus": str(self.modulus),
            "weights": list(self.weights),
        }

    @classmethod
    def from_json(cls, data) -> "ProjPoint":
        if not isinstance(data, dict):
            raise InvalidInput("a point must be a JSON object")
        if not isinstance(data.get("coords"), list):
            raise InvalidInput("point 'coords' must be a list")
        if not isinstance(data.get("weights") or [], list):
            raise InvalidInput("point 'weights' must be a list")
        try:
            coords = [_as_int(c) for c in data["coords"]]
            modulus = _as_int(data["modulus"])
        except KeyError as exc:
            raise InvalidInput(f"point JSON is missing {exc}") from exc
        weights = data.get("weights") or [1] * len(coords)
        return cls(tuple(coords), modulus, tuple(_as_int(w) for w in weights))


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InvalidInput("booleans are not integers here")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError as exc:
            raise InvalidInput(f"not a decimal integer: {x!r}") from exc
    raise InvalidInput(f"not an integer: {x!r}")


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def _check_scan_budget(n: int) -> None:
    if n <= SCAN_BUDGET:
        return
    if n <= PRIME_SCAN_BUDGET and is_prime(n):
        return
    raise BudgetExceeded(
        f"equivalence by unit scan supports n <= {SCAN_BUDGET}, or prime n <= {PRIME_SCAN_BUDGET}"
    )


def _same_space(a: ProjPoint, b: ProjPoint) -> None:
    if len(a) != len(b):
        raise ShapeMismatch(f"lengths {len(a)} and {len(b)} differ")
    if a.modulus != b.modulus:
        raise ShapeMismatch(f"moduli {a.modulus} and {b.modulus} differ")
    if a.weights != b.weights:
        raise ShapeMismatch(f"weights {list(a.weights)} and {list(b.weights)} differ")


def scale(coords: Sequence[int], lam: int, weights: Sequence[int], n: int) -> tuple[int, ...]:
    """``(lam**m_i * x_i mod n)``."""
    return tuple((pow(lam, m, n) * x) % n for x, m in zip(coords, weights))


def equivalent_points(a: ProjPoint, b: ProjPoint) -> tuple[bool, int | None]:
    """Whether ``b = lam**m * a`` modulo ``n`` for some unit ``lam``.

    Returns ``(True, lam)`` with the smallest positive such unit, or
    ``(False, None)``.
    """
    _same_space(a, b)
    n = a.modulus
    if n == 1:
        return True, 1
    _check_scan_budget(n)
    target = tuple(x % n for x in b.coords)
    ac = [x % n for x in a.coords]
    # cheap necessary condition before the scan: zero patterns must agree
    if any((x == 0) != (y == 0) for x, y in zip(ac, target)):
        return False, None
    for lam in range(1, n):
        if math.gcd(lam, n) != 1:
            continue
        if scale(ac, lam, a.weights, n) == target:
            return True, lam
    return False, None


def canonical_form(p: ProjPoint) -> tuple[int, ...]:
    """Lexicographically least tuple in ``[0, n)`` equivalent to ``p``."""
    n = p.modulus
    if n < 2:
        raise PreconditionViolated("canonical forms need a modulus >= 2")
    _check_scan_budget(n)
    base = [x % n for x in p.coords]
    return min(scale(base, lam, p.weights, n) for lam in _units(n))


@dataclass(frozen=True)
class ClassTable:
    modulus: int
    weights: tuple[int, ...]
    classes: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [s for _, s in self.classes]

    def size_profile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.sizes():
            out[s] = out.get(s, 0) + 1
        return dict(sorted(out.items()))

    def representatives(self) -> list[tuple[int, ...]]:
        return [r for r, _ in self.classes]

    def to_json(self) -> dict:
        return {
            "modulus": str(self.modulus),
            "weights": list(self.weights),
            "count": self.count,
            "classes": [{"representative": list(r), "size": s} for r, s in self.classes],
        }


def enumerate_classes(n: int, weights: Sequence[int], *, max_tuples: int | None = None) -> ClassTable:
    """Partition the unital tuples of ``(Z/n)^len(weights)`` into classes.

    Tuples are scanned in lexicographic order; the first unseen tuple of a
    class is its least element, so representatives come out canonical and
    sorted.
    """
    check_modulus(n, minimum=2)
    weights = tuple(weights)
    if not weights or any(isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in weights):
        raise PreconditionViolated(f"weights must be positive integers, got {list(weights)}")
    length = len(weights)
    limit = ENUM_MAX_TUPLES if max_tuples is None else max_tuples
    if max_tuples is None and (n > ENUM_MAX_MODULUS or length > ENUM_MAX_LENGTH):
        raise BudgetExceeded(
            f"enumeration supports n <= {ENUM_MAX_MODULUS} and length <= {ENUM_MAX_LENGTH}"
        )
    total = n**length
    if total > limit:
        raise BudgetExceeded(f"{n}^{length} = {total} tuples exceeds the budget {limit}")

    units = _units(n)
    powers = [[pow(u, m, n) for m in weights] for u in units]
    place = [n ** (length - 1 - i) for i in range(length)]
    seen = bytearray(total)
    classes = []
    for idx, tup in enumerate(cartesian(range(n), repeat=length)):
        if seen[idx] or math.gcd(gcd_all(tup), n) != 1:
            continue
        size = 0
        for pw in powers:
            j = sum(((c * x) % n) * pl for c, x, pl in zip(pw, tup, place))
            if not seen[j]:
                seen[j] = 1
                size += 1
        classes.append((tuple(tup), size))
    return ClassTable(n, weights, tuple(classes))


def _check_factors(n: int, factors: Sequence[int]) -> None:
    if not factors:
        raise BadFactorization("need at least one factor")
    for f in factors:
        if isinstance(f, bool) or not isinstance(f, int) or f < 1:
            raise BadFactorization(f"factor {f!r} is not a positive integer")
    try:
        check_pairwise_coprime(factors)
    except NonCoprimeModuli as exc:
        raise BadFactorization(str(exc)) from exc
    if prod(factors) != n:
        raise BadFactorization(f"product of {list(factors)} is {prod(factors)}, not {n}")


def reduce_projective(p: ProjPoint, factors: Sequence[int]) -> list[ProjPoint]:
    """The images of ``p`` modulo each factor (coordinates reduced)."""
    _check_factors(p.modulus, factors)
    out = []
    for f in factors:
        coords = p.coords if f == 1 else tuple(x % f for x in p.coords)
        out.append(ProjPoint(coords, f, p.weights))
    return out


def _lift_pair(a: ProjPoint, c: ProjPoint) -> tuple[int, ...]:
    """A Z-unital tuple congruent to ``a`` mod ``I`` and ``c`` mod ``J``.

    Both rows are carried through the same determinant-one column
    operations, which preserve unitality and can be undone at the end.
    """
    i_mod, j_mod = a.modulus, c.modulus
    top, bottom = list(a.coords), list(c.coords)
    ops: list[ElementaryOp] = []

    def apply(op: ElementaryOp):
        nonlocal top, bottom
        ops.append(op)
        top = op.apply_to_row(top)
        bottom = op.apply_to_row(bottom)

    size = len(top)
    # coordinate 0 becomes a unit mod I
    w = usc_shift_mod(top, i_mod)
    for j, cj in enumerate(w.coefficients, start=1):
        if cj:
            apply(ElementaryOp("add_multiple_of_column", j, 0, cj))
    z = pow(top[0], -1, i_mod)
    # other coordinates of the top row land in I
    for j in range(1, size):
        cj = (-z * top[j]) % i_mod
        if cj:
            apply(ElementaryOp("add_multiple_of_column", 0, j, cj))
    # coordinate 0 of the bottom row becomes a unit mod J (top row keeps a
    # unit there since the others are in I)
    w = usc_shift_mod(bottom, j_mod)
    for j, cj in enumerate(w.coefficients, start=1):
        if cj:
            apply(ElementaryOp("add_multiple_of_column", j, 0, cj))
    ij = i_mod * j_mod
    x = [crt_list([s, t], [i_mod, j_mod]) for s, t in zip(top, bottom)]
    t = cmh_perturb(x, ij)
    x = [xi + ti for xi, ti in zip(x, t)]
    for op in reversed(ops):
        x = op.inverse().apply_to_row(x)
    return tuple(x)


def crt_lift_projective(points: Sequence[ProjPoint]) -> ProjPoint:
    """One point modulo the product whose reductions match ``points``.

    Unit-ideal points are dropped. The result has coordinates unital over
    Z and reduces to each input exactly (``lam = 1``).
    """
    if not points:
        raise PreconditionViolated("need at least one point")
    first = points[0]
    for p in points[1:]:
        if len(p) != len(first) or p.weights != first.weights:
            raise ShapeMismatch("all points need the same length and weights")
    check_pairwise_coprime([p.modulus for p in points])
    proper = [p for p in points if p.modulus > 1]
    if not proper:
        coords = first.coords
        return ProjPoint(coords, 1, first.weights)
    if len(proper) == 1:
        # the point itself when already unital over Z, else a congruent one that is
        return unital_representative(proper[0])
    if len(first) < 2:
        raise ShapeMismatch("lifting one-coordinate points is not supported")
    # fold from the right: p_1 is combined with the lift of p_2..p_k
    acc = proper[-1]
    for p in reversed(proper[:-1]):
        coords = _lift_pair(p, acc)
        acc = ProjPoint(coords, p.modulus * acc.modulus, first.weights)
    return acc


def lift_with_witnesses(points: Sequence[ProjPoint]) -> tuple[ProjPoint, list[int]]:
    """``crt_lift_projective`` plus the per-factor equivalence witnesses."""
    q = crt_lift_projective(points)
    lams = []
    for p in points:
        image = ProjPoint(
            q.coords if p.modulus == 1 else tuple(x % p.modulus for x in q.coords),
            p.modulus,
            p.weights,
        )
        ok, lam = equivalent_points(p, image)
        if not ok:
            raise InternalCheckFailed(f"lift does not reduce to {p.coords} mod {p.modulus}")
        lams.append(lam)
    return q, lams


def crt_bijectivity_check(n: int, factors: Sequence[int], weights: Sequence[int]) -> bool:
    """Whether reduction maps the classes mod ``n`` bijectively onto the product."""
    check_modulus(n, minimum=2)
    _check_factors(n, factors)
    big = enumerate_classes(n, weights)
    proper = [f for f in factors if f > 1]
    tables = [enumerate_classes(f, weights) for f in proper]
    images = set()
    for rep, _ in big.classes:
        key = tuple(canonical_form(ProjPoint(tuple(x % f for x in rep), f, tuple(weights))) for f in proper)
        if key in images:
            return False
        images.add(key)
    expected = prod(t.count for t in tables)
    return big.count == expected and len(images) == expected


def unital_representative(p: ProjPoint) -> ProjPoint:
    """The same class with coordinates unital over Z."""
    if gcd_all(p.coords) == 1:
        return p
    return ProjPoint(tuple(unital_lift(p.coords, p.modulus)), p.modulus, p.weights)


def points_from_json(items: Iterable) -> list[ProjPoint]:
    return [ProjPoint.from_json(x) for x in items]


__all__ = [
    "ClassTable",
    "ProjPoint",
    "canonical_form",
    "crt_bijectivity_check",
    "crt_lift_projective",
    "enumerate_classes",
    "equivalent_points",
    "lift_with_witnesses",
    "reduce_projective",
    "unital_representative",
]
