"""Exit criteria, each run at its stated size, tolerance and time limit.

Every test prints one ``PASS``/``FAIL`` line. Run directly with
``python tests/test_acceptance.py`` for the same lines without pytest.
"""
from __future__ import annotations

import contextlib
import io
import json
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import matmul, naive_det, random_sl_mod, random_sp_mod, symplectic_exact  # noqa: E402
from stronglift.cli import main as cli_main  # noqa: E402
from stronglift.lifting import (  # noqa: E402
    orthogonal_obstruction,
    sl_lift_matrix,
    sl_surject_projective,
    sp_extend_column,
    sp_extend_row,
    sp_lift_matrix,
    sp_surject_projective,
)
from stronglift.matrix import IntMatrix, det  # noqa: E402
from stronglift.projective import ProjPoint, crt_bijectivity_check, enumerate_classes, equivalent_points  # noqa: E402
from stronglift.ring import crt_list  # noqa: E402
from stronglift.unital import coprime_shift  # noqa: E402

pytestmark = pytest.mark.acceptance

EX_IDEALS = (241, 601, 1201, 1321)
EX_WEIGHTS = ((2, 5, 3, 10), (8, 20, 30, 24), (1, 50, 48, 40), (11, 55, 44, 22))


class Report:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list[str] = []
        self.start = time.perf_counter()

    def fail(self, msg):
        self.failures.append(msg)

    def finish(self, capsys=None):
        seconds = time.perf_counter() - self.start
        if seconds >= self.limit:
            self.fail(f"runtime {seconds:.2f}s exceeds {self.limit}s")
        status = "PASS" if not self.failures else "FAIL"
        line = f"[{status}] criterion {self.number}: {self.title} ({seconds:.2f}s, limit {self.limit}s)"
        if self.failures:
            line += " :: " + "; ".join(self.failures[:5])
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)
        assert not self.failures, line


def congruent(a, b, n):
    return all((x - y) % n == 0 for r, s in zip(a, b) for x, y in zip(r, s))


def check_rows(out, points, lams, rep):
    if len(lams) != len(points):
        rep.fail("missing unit witnesses")
        return
    for i, (row, p, lam) in enumerate(zip(out, points, lams)):
        n = p.modulus
        if math.gcd(lam, n) != 1:
            rep.fail(f"row {i}: witness {lam} is not a unit mod {n}")
        if any((x - pow(lam, m, n) * y) % n for x, y, m in zip(row, p.coords, p.weights)):
            rep.fail(f"row {i}: not lam^m times the target mod {n}")
        if not equivalent_points(p, ProjPoint(tuple(x % n for x in row), n, p.weights))[0]:
            rep.fail(f"row {i}: equivalence test rejects the row class")


def test_criterion_1_class_counts(capsys):
    rep = Report(1, "enumerate-classes weights (1,2), p in {3,5,7,11,13}: p+2 classes, sizes p x (p-1) and 2 x (p-1)/2", 1.0)
    for p in (3, 5, 7, 11, 13):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(["enumerate-classes", "--modulus", str(p), "--weights", "1,2"])
        if code != 0:
            rep.fail(f"p={p}: exit {code}")
            continue
        table = json.loads(buf.getvalue())["output"]
        sizes = sorted(c["size"] for c in table["classes"])
        if table["count"] != p + 2:
            rep.fail(f"p={p}: {table['count']} classes")
        if sizes != sorted([(p - 1) // 2] * 2 + [p - 1] * p):
            rep.fail(f"p={p}: size profile {sizes}")
    rep.finish(capsys)


def test_criterion_2_crt_bijectivity(capsys):
    rep = Report(2, "CRT reduction is a bijection on classes for 4 moduli x 3 weight vectors", 30.0)
    for n, factors in ((15, (3, 5)), (21, (3, 7)), (35, (5, 7)), (30, (2, 3, 5))):
        for w in ((1, 1), (1, 2), (2, 3)):
            if not crt_bijectivity_check(n, factors, w):
                rep.fail(f"n={n} w={w}: not bijective")
            whole = enumerate_classes(n, w).count
            parts = math.prod(enumerate_classes(f, w).count for f in factors)
            if whole != parts:
                rep.fail(f"n={n} w={w}: {whole} != {parts}")
    rep.finish(capsys)


def test_criterion_3_sl_lift(capsys):
    rep = Report(3, "SL lift: 100 random instances per (k, n) in {2,3,4} x {4,9,25,36,101}", 10.0)
    rng = random.Random(3)
    bad = 0
    for k in (2, 3, 4):
        for n in (4, 9, 25, 36, 101):
            for _ in range(100):
                m = random_sl_mod(rng, k, n)
                try:
                    out = sl_lift_matrix(IntMatrix(m), n).tolist()
                except Exception as exc:  # a raised error is a failed instance
                    bad += 1
                    rep.fail(f"k={k} n={n}: {type(exc).__name__}")
                    continue
                if naive_det(out) != 1 or not congruent(out, m, n):
                    bad += 1
                    rep.fail(f"k={k} n={n}: wrong output")
    if bad:
        rep.fail(f"{bad} failures")
    rep.finish(capsys)


def test_criterion_4_sp_lift(capsys):
    rep = Report(4, "Sp lift: 100 random instances per (k, n) in {1,2,3} x {4,9,25,101}", 60.0)
    rng = random.Random(4)
    for k in (1, 2, 3):
        for n in (4, 9, 25, 101):
            for _ in range(100):
                m = random_sp_mod(rng, k, n)
                try:
                    out = sp_lift_matrix(IntMatrix(m), n).tolist()
                except Exception as exc:
                    rep.fail(f"k={k} n={n}: {type(exc).__name__}")
                    continue
                if not symplectic_exact(out) or not congruent(out, m, n):
                    rep.fail(f"k={k} n={n}: wrong output")
    rep.finish(capsys)


def _example_points():
    return [ProjPoint((1, 1, 1, 1), n, w) for n, w in zip(EX_IDEALS, EX_WEIGHTS)]


def test_criterion_5_four_prime_sl(capsys):
    rep = Report(5, "surject-sl on the four-prime all-ones targets gives A in SL_4(Z) with verified row classes", 10.0)
    pts = _example_points()
    cert = sl_surject_projective(pts)
    out = cert.output.tolist()
    if naive_det(out) != 1:
        rep.fail("det != 1")
    check_rows(out, pts, cert.lambdas, rep)
    rep.finish(capsys)


def test_criterion_6_four_prime_sp(capsys):
    rep = Report(6, "surject-sp on the four-prime all-ones targets gives N in Sp_4(Z) with verified row classes", 60.0)
    pts = _example_points()
    cert = sp_surject_projective(pts)
    out = cert.output.tolist()
    if not symplectic_exact(out):
        rep.fail("not symplectic")
    check_rows(out, pts, cert.lambdas, rep)
    rep.finish(capsys)


def test_criterion_7_completion(capsys):
    rep = Report(7, "row/column completion: 200 rows per k in {1,2,3}, every position, exact and verbatim", 10.0)
    rng = random.Random(7)
    for k in (1, 2, 3):
        for _ in range(200):
            while True:
                row = [rng.randint(-40, 40) for _ in range(2 * k)]
                row[rng.randrange(2 * k)] = rng.choice([1, -1])
                if math.gcd(*row) == 1:
                    break
            for pos in range(1, 2 * k + 1):
                g = sp_extend_row(row, k, pos).tolist()
                if not symplectic_exact(g) or g[pos - 1] != row:
                    rep.fail(f"row {row} at {pos}")
                h = sp_extend_column(row, k, pos).tolist()
                if not symplectic_exact(h) or [r[pos - 1] for r in h] != row:
                    rep.fail(f"column {row} at {pos}")
    rep.finish(capsys)


def test_criterion_8_obstruction(capsys):
    rep = Report(8, "O(2,1) mod 7: obstructed classes are norms {0,3,5,6}; 500 group products never hit one", 10.0)
    r = 7
    squares = {g * g % r for g in range(1, r)}
    if squares != {1, 2, 4}:
        rep.fail(f"squares mod 7 = {squares}")
    classes = [rep_ for rep_, _ in enumerate_classes(r, (1, 1, 1)).classes]
    norm = lambda c: (c[0] ** 2 + c[1] ** 2 - c[2] ** 2) % r  # noqa: E731
    obstructed = {c for c in classes if orthogonal_obstruction(ProjPoint(c, r), 2, 1, "first_p")}
    expected = {c for c in classes if norm(c) in {0, 3, 5, 6}}
    if obstructed != expected:
        rep.fail(f"{len(obstructed ^ expected)} classes disagree")

    form = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    v, jv = [1, 1, 1], [1, 1, -1]
    gens = [
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[int(i == j) - 2 * v[i] * jv[j] for j in range(3)] for i in range(3)],
    ] + [[[a, 0, 0], [0, b, 0], [0, 0, c]] for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    rng = random.Random(8)
    for _ in range(500):
        m = [[int(i == j) for j in range(3)] for i in range(3)]
        for _ in range(rng.randint(1, 15)):
            m = matmul(m, rng.choice(gens))
        if matmul(matmul(m, form), [list(c) for c in zip(*m)]) != form:
            rep.fail("sampled product left the group")
            continue
        first = tuple(x % r for x in m[0])
        if orthogonal_obstruction(ProjPoint(first, r), 2, 1, "first_p") or first in obstructed:
            rep.fail(f"first row {m[0]} lands in an obstructed class")
    rep.finish(capsys)


def test_criterion_9_oracles(capsys):
    rep = Report(9, "Bareiss vs cofactor (500), CRT vs scan, coprime shift vs scan: zero discrepancies", 60.0)
    rng = random.Random(9)
    for _ in range(500):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-10**3, 10**3) for _ in range(n)] for _ in range(n)]
        if det(IntMatrix(rows)) != naive_det(rows):
            rep.fail(f"det mismatch on {rows}")
    for _ in range(300):
        moduli = []
        while True:
            m = rng.randint(1, 60)
            if all(math.gcd(m, o) == 1 for o in moduli) and math.prod(moduli) * m <= 10**4:
                moduli.append(m)
            if len(moduli) == 3 or rng.random() < 0.3:
                break
        residues = [rng.randint(-500, 500) for _ in moduli]
        total = math.prod(moduli)
        scan = [y for y in range(total) if all((y - a) % m == 0 for a, m in zip(residues, moduli))]
        if scan != [crt_list(residues, moduli)]:
            rep.fail(f"crt mismatch {residues} {moduli}")
    for _ in range(300):
        m = rng.randint(1, 10**4)
        while True:
            a, b = rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4)
            if math.gcd(a, b) == 1:
                break
        feasible = any(math.gcd(a + t * b, m) == 1 for t in range(m))
        n0 = coprime_shift(a, b, m)
        if not feasible or math.gcd(a + n0 * b, m) != 1:
            rep.fail(f"coprime shift mismatch {a} {b} {m}")
    rep.finish(capsys)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
