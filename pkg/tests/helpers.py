"""Random instance generators shared by the test modules.

Generators build their own matrices from integer lists so that the library
code under test is not used to produce its own inputs.
"""
from __future__ import annotations

import math
import random

from stronglift.matrix import IntMatrix


def naive_det(rows):
    """Cofactor expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * naive_det(minor)
    return total


def matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def form(k):
    j = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        j[i][k + i] = 1
        j[k + i][i] = -1
    return j


def transpose(a):
    return [list(c) for c in zip(*a)]


def symplectic_exact(rows):
    k = len(rows) // 2
    return matmul(matmul(transpose(rows), form(k)), rows) == form(k)


def symplectic_mod(rows, n):
    k = len(rows) // 2
    lhs = matmul(matmul(transpose(rows), form(k)), rows)
    return all((x - y) % n == 0 for r, s in zip(lhs, form(k)) for x, y in zip(r, s))


def random_sl_mod(rng: random.Random, k: int, n: int):
    """A uniform-ish element of SL_k(Z/n): random rows, first row rescaled."""
    while True:
        m = [[rng.randrange(n) for _ in range(k)] for _ in range(k)]
        d = naive_det(m) % n
        if math.gcd(d, n) == 1:
            inv = pow(d, -1, n)
            m[0] = [(x * inv) % n for x in m[0]]
            return m


def random_sl_exact(rng: random.Random, k: int, bound: int, steps: int | None = None):
    m = identity(k)
    if k == 1:
        return m
    for _ in range(steps or 3 * k):
        i, j = rng.sample(range(k), 2)
        c = rng.randint(-bound, bound)
        for r in m:
            r[j] += c * r[i]
    return m


def random_sp_mod(rng: random.Random, k: int, n: int):
    """Products of pair blocks, symmetric shears and the form itself, mod n."""
    size = 2 * k
    m = identity(size)
    for _ in range(4):
        kind = rng.choice(["block", "upper", "lower", "form"])
        g = identity(size)
        if kind == "block":
            u = random_sl_exact(rng, k, n)
            uinv_t = transpose(_inverse_det_one(u))
            for i in range(k):
                for j in range(k):
                    g[i][j] = u[i][j]
                    g[k + i][k + j] = uinv_t[i][j]
        elif kind == "form":
            g = form(k)
        else:
            for i in range(k):
                for j in range(i, k):
                    c = rng.randrange(n)
                    if kind == "upper":
                        g[i][k + j] = g[j][k + i] = c
                    else:
                        g[k + i][j] = g[k + j][i] = c
        m = matmul(m, g)
    return [[x % n for x in r] for r in m]


def _inverse_det_one(u):
    k = len(u)
    if k == 1:
        return [[u[0][0]]]
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [r[:j] + r[j + 1:] for t, r in enumerate(u) if t != i]
            adj[j][i] = (-1) ** (i + j) * naive_det(minor)
    return adj


def random_unital_row(rng: random.Random, length: int, bound: int = 50):
    while True:
        r = [rng.randint(-bound, bound) for _ in range(length)]
        if math.gcd(*r) == 1:
            return r


def as_matrix(rows) -> IntMatrix:
    return IntMatrix(rows)
