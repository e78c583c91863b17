"""Named operations with JSON parameters, and independent re-verification.

``run(name, params)`` returns a :class:`LiftCertificate` whose ``input`` is
the normalized parameter object. ``verify(record)`` recomputes every
predicate from that input and the recorded output; the ``checks`` listed in
the record are ignored.
"""
from __future__ import annotations

import json
import math
from itertools import product as cartesian
from typing import Any, Callable

from .errors import InvalidInput
from .lifting import (
    CongruenceTarget,
    LiftCertificate,
    extension_certificate,
    orthogonal_obstruction,
    sl_lift,
    sl_multi_congruence_lift,
    sl_surject_projective,
    sp_lift,
    sp_multi_congruence_lift,
    sp_surject_projective,
)
from .lifting.orthogonal import form_value
from .matrix import IntMatrix, det, is_symplectic
from .projective import (
    ProjPoint,
    enumerate_classes,
    lift_with_witnesses,
    reduce_projective,
    scale,
)
from .ring import gcd_all, is_prime, prod
from .unital import ShiftWitness, cmh_perturb, coprime_shift, diag_det_one, usc_shift, usc_shift_mod

# parameter readers: accept parsed JSON, or the raw strings argparse hands over


def _int(params: dict, key: str, default=None) -> int:
    v = params.get(key, default)
    if v is None:
        raise InvalidInput(f"missing parameter {key!r}")
    if isinstance(v, bool):
        raise InvalidInput(f"{key} must be an integer")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            raise InvalidInput(f"{key} must be an integer, got {v!r}") from None
    raise InvalidInput(f"{key} must be an integer, got {type(v).__name__}")


def _json(params: dict, key: str):
    v = params.get(key)
    if v is None:
        raise InvalidInput(f"missing parameter {key!r}")
    if isinstance(v, str):
        try:
            return json.loads(v)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{key} is not valid JSON: {exc.msg}") from None
    return v


def _int_list(params: dict, key: str) -> list[int]:
    v = params.get(key)
    if v is None:
        raise InvalidInput(f"missing parameter {key!r}")
    if isinstance(v, str):
        s = v.strip()
        v = _json(params, key) if s.startswith("[") else [x for x in s.split(",") if x.strip()]
    if not isinstance(v, list):
        raise InvalidInput(f"{key} must be a list of integers")
    return [_int({"x": x}, "x") for x in v]


def _points(params: dict) -> list[ProjPoint]:
    items = _json(params, "points")
    if not isinstance(items, list):
        raise InvalidInput("points must be a JSON list")
    return [ProjPoint.from_json(x) for x in items]


def _point(params: dict) -> ProjPoint:
    return ProjPoint.from_json(_json(params, "point"))


def _matrix(params: dict) -> IntMatrix:
    return IntMatrix.from_json(_json(params, "matrix"))


def _target(params: dict) -> CongruenceTarget:
    rows = _json(params, "rows")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidInput("rows must be a JSON list of lists")
    return CongruenceTarget(
        tuple(tuple(_int({"x": x}, "x") for x in r) for r in rows),
        tuple(_int_list(params, "ideals")),
    )


def _strs(values) -> list[str]:
    return [str(v) for v in values]


# runners


def _lift_sl(params):
    return sl_lift(_matrix(params), _int(params, "modulus"))


def _lift_sp(params):
    return sp_lift(_matrix(params), _int(params, "modulus"))


def _extend(column: bool):
    def run(params):
        vec = _int_list(params, "vector")
        if len(vec) % 2:
            raise InvalidInput(f"vector length must be even, got {len(vec)}")
        return extension_certificate(vec, len(vec) // 2, _int(params, "position", 1), column)

    return run


def _multi_sl(params):
    return sl_multi_congruence_lift(_target(params))


def _multi_sp(params):
    return sp_multi_congruence_lift(_target(params))


def _surject_sl(params):
    return sl_surject_projective(_points(params))


def _surject_sp(params):
    return sp_surject_projective(_points(params))


def _crt_lift(params):
    points = _points(params)
    q, lams = lift_with_witnesses(points)
    return LiftCertificate(
        "crt-proj-lift",
        {"points": [p.to_json() for p in points]},
        q.to_json(),
        tuple(lams),
        (("reductions_equivalent", True), ("unital_over_z", gcd_all(q.coords) == 1)),
    )


def _crt_reduce(params):
    p = _point(params)
    factors = _int_list(params, "factors")
    images = reduce_projective(p, factors)
    return LiftCertificate(
        "crt-proj-reduce",
        {"point": p.to_json(), "factors": _strs(factors)},
        [q.to_json() for q in images],
        (),
        (("entrywise_reduction", True),),
    )


def _enumerate(params):
    n = _int(params, "modulus")
    weights = _int_list(params, "weights")
    table = enumerate_classes(n, weights)
    nonunital = sum(1 for _ in _nonunital_tuples(n, len(weights)))
    return LiftCertificate(
        "enumerate-classes",
        {"modulus": str(n), "weights": weights},
        table.to_json(),
        (),
        (("sizes_sum_to_unital_tuples", sum(table.sizes()) == n ** len(weights) - nonunital),),
    )


def _nonunital_tuples(n, length):
    for t in cartesian(range(n), repeat=length):
        if math.gcd(gcd_all(t), n) != 1:
            yield t


def _diag(params):
    values = _int_list(params, "values")
    moduli = _int_list(params, "moduli")
    d = diag_det_one(values, moduli)
    return LiftCertificate(
        "diag-det-one",
        {"values": _strs(values), "moduli": _strs(moduli)},
        _strs(d),
        (),
        _diag_checks(values, moduli, d),
    )


def _diag_checks(values, moduli, d):
    total = prod(moduli)
    return (
        ("componentwise_congruent", all((x - y) % n == 0 for x, y, n in zip(d, values, moduli))),
        ("product_is_one", prod(d) % total == 1 % total),
    )


def _coprime(params):
    a, b, m = _int(params, "a"), _int(params, "b"), _int(params, "m")
    n0 = coprime_shift(a, b, m)
    return LiftCertificate(
        "coprime-shift",
        {"a": str(a), "b": str(b), "m": str(m)},
        str(n0),
        (),
        (("coprime_to_m", math.gcd(a + n0 * b, m) == 1),),
    )


def _usc(params):
    entries = _int_list(params, "entries")
    target = _int(params, "target")
    relaxed = bool(params.get("mod", False))
    w = (usc_shift_mod if relaxed else usc_shift)(entries, target)
    return LiftCertificate(
        "usc-shift",
        {"entries": _strs(entries), "target": str(target), "mod": relaxed},
        w.to_json(),
        (),
        _usc_checks(entries, target, w),
    )


def _usc_checks(entries, target, w: ShiftWitness):
    combo = entries[0] + sum(c * e for c, e in zip(w.coefficients, entries[1:]))
    return (
        ("result_is_combination", len(w.coefficients) == len(entries) - 1 and combo == w.result),
        ("unit_modulo_target", math.gcd(w.result, target) == 1),
    )


def _cmh(params):
    x = _int_list(params, "entries")
    n = _int(params, "modulus")
    t = cmh_perturb(x, n)
    return LiftCertificate(
        "cmh-perturb",
        {"entries": _strs(x), "modulus": str(n)},
        _strs(t),
        (),
        _cmh_checks(x, n, t),
    )


def _cmh_checks(x, n, t):
    return (
        ("shifts_in_ideal", len(t) == len(x) and all(ti % n == 0 for ti in t)),
        ("unital_over_z", gcd_all([a + b for a, b in zip(x, t)]) == 1),
    )


def _obstruction(params):
    point = _point(params)
    p, q = _int(params, "p"), _int(params, "q")
    band = params.get("band") or "first_p"
    out = orthogonal_obstruction(point, p, q, band)
    return LiftCertificate(
        "obstruction",
        {"point": point.to_json(), "p": p, "q": q, "band": band},
        out,
        (),
        (("matches_square_scan", out == _obstructed_by_scan(point.coords, p, point.modulus, band)),),
    )


def _obstructed_by_scan(coords, p, r, band):
    eps = 1 if band == "first_p" else -1
    value = form_value(coords, p, r)
    return all((eps * g * g - value) % r for g in range(1, r))


RUNNERS: dict[str, Callable[[dict], LiftCertificate]] = {
    "lift-sl": _lift_sl,
    "lift-sp": _lift_sp,
    "extend-row": _extend(False),
    "extend-col": _extend(True),
    "multi-lift-sl": _multi_sl,
    "multi-lift-sp": _multi_sp,
    "surject-sl": _surject_sl,
    "surject-sp": _surject_sp,
    "crt-proj-lift": _crt_lift,
    "crt-proj-reduce": _crt_reduce,
    "enumerate-classes": _enumerate,
    "diag-det-one": _diag,
    "coprime-shift": _coprime,
    "usc-shift": _usc,
    "cmh-perturb": _cmh,
    "obstruction": _obstruction,
}


def run(name: str, params: dict) -> LiftCertificate:
    try:
        runner = RUNNERS[name]
    except KeyError:
        raise InvalidInput(f"unknown operation {name!r}") from None
    return runner(params)


# verification: recompute everything from the record's input and output


def _congruent_rows(m: IntMatrix, target: CongruenceTarget) -> bool:
    return m.shape == (target.size, target.size) and target.matches(m)


def _rows_in_classes(m: IntMatrix, points, lams) -> bool:
    if m.shape != (len(points), len(points)) or len(lams) != len(points):
        return False
    for row, p, lam in zip(m.rows(), points, lams):
        n = p.modulus
        if n == 1:
            continue
        if math.gcd(lam, n) != 1 or scale(p.coords, lam, p.weights, n) != tuple(x % n for x in row):
            return False
    return True


def _verify_matrix_lift(rec, inp, out):
    op = rec["operation"]
    if op in ("lift-sl", "lift-sp"):
        m_bar, n = IntMatrix.from_json(inp["matrix"]), _int(inp, "modulus")
        same = out.shape == m_bar.shape and all(
            (x - y) % n == 0 for r, s in zip(out.rows(), m_bar.rows()) for x, y in zip(r, s)
        )
        group = ("det_exactly_one", out.is_square and det(out) == 1) if op == "lift-sl" else (
            "symplectic_exact", out.nrows % 2 == 0 and out.is_square and is_symplectic(out))
        return [group, ("congruent_mod_n", same)]
    if op in ("extend-row", "extend-col"):
        vec = [_int({"x": x}, "x") for x in inp["vector"]]
        pos = _int(inp, "position")
        ok_shape = out.shape == (len(vec), len(vec)) and 1 <= pos <= len(vec)
        got = (out.col(pos - 1) if op == "extend-col" else out.row(pos - 1)) if ok_shape else None
        return [
            ("symplectic_exact", ok_shape and is_symplectic(out)),
            ("column_embedded" if op == "extend-col" else "row_embedded", ok_shape and list(got) == vec),
        ]
    if op in ("multi-lift-sl", "multi-lift-sp"):
        target = _target(inp)
        group = ("det_exactly_one", out.is_square and det(out) == 1) if op == "multi-lift-sl" else (
            "symplectic_exact", out.is_square and out.nrows % 2 == 0 and is_symplectic(out))
        return [group, ("rows_congruent", _congruent_rows(out, target))]
    if op in ("surject-sl", "surject-sp"):
        points = [ProjPoint.from_json(x) for x in inp["points"]]
        lams = [_int({"x": x}, "x") for x in rec.get("lambdas", [])]
        group = ("det_exactly_one", out.is_square and det(out) == 1) if op == "surject-sl" else (
            "symplectic_exact", out.is_square and out.nrows % 2 == 0 and is_symplectic(out))
        return [group, ("rows_in_classes", _rows_in_classes(out, points, lams))]
    raise InvalidInput(f"cannot verify operation {op!r}")


def verify(record: Any) -> list[tuple[str, bool]]:
    """Recompute the predicates behind ``record``; returns (name, passed) pairs.

    A structurally broken record raises :class:`InvalidInput`.
    """
    try:
        return _verify(record)
    except (KeyError, TypeError, AttributeError, IndexError) as exc:
        raise InvalidInput(f"malformed certificate: {type(exc).__name__}: {exc}") from None


def _verify(record: Any) -> list[tuple[str, bool]]:
    if not isinstance(record, dict) or "operation" not in record:
        raise InvalidInput("a certificate is a JSON object with an 'operation' field")
    op = record["operation"]
    try:
        inp, out = record["input"], record["output"]
    except KeyError as exc:
        raise InvalidInput(f"certificate is missing {exc}") from None
    if op in ("lift-sl", "lift-sp", "extend-row", "extend-col", "multi-lift-sl",
              "multi-lift-sp", "surject-sl", "surject-sp"):
        return _verify_matrix_lift(record, inp, IntMatrix.from_json(out))
    if op == "crt-proj-lift":
        points = [ProjPoint.from_json(x) for x in inp["points"]]
        q = ProjPoint.from_json(out)
        lams = [_int({"x": x}, "x") for x in record.get("lambdas", [])]
        ok = len(lams) == len(points) and q.modulus == prod(p.modulus for p in points)
        for p, lam in zip(points, lams):
            n = p.modulus
            if n > 1 and (
                math.gcd(lam, n) != 1
                or scale(p.coords, lam, p.weights, n) != tuple(x % n for x in q.coords)
            ):
                ok = False
        return [
            ("reductions_equivalent", ok),
            ("unital_over_z", gcd_all(q.coords) == 1),
        ]
    if op == "crt-proj-reduce":
        p = ProjPoint.from_json(inp["point"])
        factors = [_int({"x": x}, "x") for x in inp["factors"]]
        images = [ProjPoint.from_json(x) for x in out]
        ok = (
            len(images) == len(factors)
            and prod(factors) == p.modulus
            and all(
                img.modulus == f and all((x - y) % f == 0 for x, y in zip(img.coords, p.coords))
                for img, f in zip(images, factors)
            )
        )
        return [("entrywise_reduction", ok)]
    if op == "enumerate-classes":
        n = _int(inp, "modulus")
        weights = [_int({"x": x}, "x") for x in inp["weights"]]
        fresh = enumerate_classes(n, weights).to_json()
        return [("table_reproduced", fresh == out)]
    if op == "diag-det-one":
        values = [_int({"x": x}, "x") for x in inp["values"]]
        moduli = [_int({"x": x}, "x") for x in inp["moduli"]]
        d = [_int({"x": x}, "x") for x in out]
        return list(_diag_checks(values, moduli, d)) if len(d) == len(values) else [("length", False)]
    if op == "coprime-shift":
        a, b, m = _int(inp, "a"), _int(inp, "b"), _int(inp, "m")
        return [("coprime_to_m", math.gcd(a + _int({"x": out}, "x") * b, m) == 1)]
    if op == "usc-shift":
        entries = [_int({"x": x}, "x") for x in inp["entries"]]
        w = ShiftWitness.from_json(out)
        target = _int(inp, "target")
        checks = list(_usc_checks(entries, target, w))
        if not inp.get("mod"):
            checks.append(("input_unital", gcd_all(entries) == 1))
        return checks
    if op == "cmh-perturb":
        x = [_int({"x": v}, "x") for v in inp["entries"]]
        t = [_int({"x": v}, "x") for v in out]
        return list(_cmh_checks(x, _int(inp, "modulus"), t))
    if op == "obstruction":
        point = ProjPoint.from_json(inp["point"])
        r = point.modulus
        if r == 2 or not is_prime(r):
            return [("odd_prime_modulus", False)]
        expect = _obstructed_by_scan(point.coords, _int(inp, "p"), r, inp.get("band", "first_p"))
        return [("matches_square_scan", out is expect)]
    raise InvalidInput(f"cannot verify operation {op!r}")
