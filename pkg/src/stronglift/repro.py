"""Run the bundled example fixtures and report pass/fail with timings."""
from __future__ import annotations

import json
import random
import time
from importlib import resources
from pathlib import Path

from .errors import InternalCheckFailed, InvalidInput, LiftError
from .lifting import sl_lift, sp_lift
from .matrix import IntMatrix, embed_sl_pair_block, embed_symmetric_shear
from .operations import run, verify
from .projective import ENUM_MAX_MODULUS, crt_bijectivity_check, enumerate_classes

# enumeration above the default modulus budget is allowed up to this many tuples
LARGE_ENUM_TUPLES = 10**6


def load_fixtures(path: str | Path | None = None) -> list[dict]:
    if path is None:
        text = resources.files("stronglift").joinpath("data/reference_examples.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"fixtures are not valid JSON: {exc.msg}") from None
    items = data.get("fixtures") if isinstance(data, dict) else None
    if not isinstance(items, list):
        raise InvalidInput("fixtures JSON needs a 'fixtures' list")
    return items


def _enumerate(fx):
    n = int(fx["modulus"])
    big = n > ENUM_MAX_MODULUS
    table = enumerate_classes(n, fx["weights"], max_tuples=LARGE_ENUM_TUPLES if big else None)
    expect = fx.get("expect", {})
    checks = []
    if "count" in expect:
        checks.append(("class_count", table.count == int(expect["count"])))
    if "size_profile" in expect:
        want = {int(k): int(v) for k, v in expect["size_profile"].items()}
        checks.append(("size_profile", table.size_profile() == want))
    return checks


def _surject(fx):
    rec = run(fx["kind"], {"points": fx["points"]}).to_json()
    return verify(rec)


def _bijectivity(fx):
    ok = crt_bijectivity_check(int(fx["modulus"]), [int(f) for f in fx["factors"]], fx["weights"])
    return [("bijective", ok)]


def _random_sl(rng, k, n):
    # a product of random transvections reduced mod n is in SL_k(Z/n)
    return _exact_sl(rng, k, n).mod(n)


def _exact_sl(rng, k, n):
    m = IntMatrix.identity(k)
    if k == 1:
        return m
    for _ in range(3 * k):
        i, j = rng.sample(range(k), 2)
        rows = [[int(a == b) for b in range(k)] for a in range(k)]
        rows[i][j] = rng.randrange(n)
        m = m @ IntMatrix(rows)
    return m


def _random_sp(rng, k, n):
    m = embed_sl_pair_block(_exact_sl(rng, k, n))
    for upper in (True, False, True):
        s = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                s[i][j] = s[j][i] = rng.randrange(n)
        m = m @ embed_symmetric_shear(IntMatrix(s), upper)
    return m.mod(n)


def _random_lifts(fx, seed):
    rng = random.Random(seed)
    ok = True
    for _ in range(int(fx.get("count", 10))):
        n = rng.choice([4, 9, 25, 36, 101])
        k = rng.choice([1, 2, 3])
        try:
            if k > 1:
                sl_lift(_random_sl(rng, k, n), n)
            sp_lift(_random_sp(rng, k, n), n)
        except InternalCheckFailed:
            ok = False
    return [("random_lifts_certified", ok)]


def run_fixture(fx: dict, seed: int = 0) -> list[tuple[str, bool]]:
    kind = fx.get("kind")
    if kind == "enumerate-classes":
        return _enumerate(fx)
    if kind in ("surject-sl", "surject-sp"):
        return _surject(fx)
    if kind == "crt-bijectivity":
        return _bijectivity(fx)
    if kind == "random-lifts":
        return _random_lifts(fx, seed)
    raise InvalidInput(f"unknown fixture kind {kind!r}")


def repro(path=None, budget_small: bool = False, seed: int = 0) -> dict:
    """Run every fixture; ``budget_small`` skips enumerations with n > 101."""
    results = []
    for fx in load_fixtures(path):
        name = fx.get("name", "?")
        if budget_small and fx.get("kind") == "enumerate-classes" and int(fx["modulus"]) > ENUM_MAX_MODULUS:
            results.append({"name": name, "status": "skipped", "seconds": 0.0, "failed_checks": []})
            continue
        start = time.perf_counter()
        try:
            checks = run_fixture(fx, seed)
            failed = [c for c, ok in checks if not ok]
            if not checks:
                failed = ["no_checks"]
        except (LiftError, InternalCheckFailed, KeyError, TypeError) as exc:
            failed = [f"{type(exc).__name__}: {exc}"]
        results.append({
            "name": name,
            "status": "fail" if failed else "pass",
            "seconds": round(time.perf_counter() - start, 4),
            "failed_checks": failed,
        })
    return {
        "passed": all(r["status"] != "fail" for r in results),
        "results": results,
    }
