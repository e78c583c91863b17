import pytest

from helpers import matmul
from stronglift.errors import BadLength, NotPrimeModulus, PreconditionViolated
from stronglift.lifting import orthogonal_obstruction
from stronglift.projective import ProjPoint, enumerate_classes

FORM_21 = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]


def generators_21():
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    signs = [[[s0, 0, 0], [0, s1, 0], [0, 0, s2]] for s0 in (1, -1) for s1 in (1, -1) for s2 in (1, -1)]
    # reflection in v = (1, 1, 1), which has form value 1
    v = [1, 1, 1]
    jv = [1, 1, -1]
    refl = [[int(i == j) - 2 * v[i] * jv[j] for j in range(3)] for i in range(3)]
    return [swap, refl] + signs


def test_examples():
    assert orthogonal_obstruction(ProjPoint((1, 1, 0), 7), 2, 1, "first_p") is False
    assert orthogonal_obstruction(ProjPoint((0, 0, 1), 7), 2, 1, "first_p") is True
    assert orthogonal_obstruction(ProjPoint((1, 0, 1), 7), 2, 1, "first_p") is True


def test_last_band_flips_sign():
    # (0, 0, 1) has value -1 = -(1^2): reachable in the last band
    assert orthogonal_obstruction(ProjPoint((0, 0, 1), 7), 2, 1, "last_q") is False


def test_errors():
    with pytest.raises(NotPrimeModulus):
        orthogonal_obstruction(ProjPoint((1, 0, 0), 9), 2, 1)
    with pytest.raises(NotPrimeModulus):
        orthogonal_obstruction(ProjPoint((1, 0, 0), 2), 2, 1)
    with pytest.raises(BadLength):
        orthogonal_obstruction(ProjPoint((1, 0), 7), 2, 1)
    with pytest.raises(PreconditionViolated):
        orthogonal_obstruction(ProjPoint((1, 0, 0), 7, (1, 2, 1)), 2, 1)
    with pytest.raises(PreconditionViolated):
        orthogonal_obstruction(ProjPoint((1, 0, 0), 7), 2, 1, "middle")


def test_generators_preserve_form():
    for g in generators_21():
        assert matmul(matmul(g, FORM_21), [list(c) for c in zip(*g)]) == FORM_21


@pytest.mark.parametrize("r", [3, 5, 7, 11, 13])
def test_obstruction_matches_square_scan(r):
    squares = {g * g % r for g in range(1, r)}
    for rep, _ in enumerate_classes(r, (1, 1, 1)).classes:
        value = (rep[0] ** 2 + rep[1] ** 2 - rep[2] ** 2) % r
        pt = ProjPoint(rep, r)
        assert orthogonal_obstruction(pt, 2, 1, "first_p") == (value not in squares)
        assert orthogonal_obstruction(pt, 2, 1, "last_q") == ((-value) % r not in squares)


def test_sampled_group_rows_never_obstructed(rng):
    gens = generators_21()
    for _ in range(200):
        m = [[int(i == j) for j in range(3)] for i in range(3)]
        for _ in range(rng.randint(1, 12)):
            m = matmul(m, rng.choice(gens))
        for i in range(3):
            band = "first_p" if i < 2 else "last_q"
            assert not orthogonal_obstruction(ProjPoint(tuple(m[i]), 7), 2, 1, band)
