"""Cayley-Dickson algebra laws, from the complexes up to the octonions."""

import itertools
import random
from fractions import Fraction

from rigiditykit.octonion import (
    basis_element,
    conj,
    inverse,
    left_mult_matrix,
    multiply,
    norm_sq,
    right_mult_matrix,
)


def _random_element(rng, dim):
    return tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim))


def test_complex_level_matches_gaussian_arithmetic():
    x = (Fraction(1, 2), Fraction(3))
    y = (Fraction(-2), Fraction(1, 5))
    prod = multiply(x, y)
    # (a+bi)(c+di) = (ac - bd) + (ad + bc)i
    assert prod[0] == x[0] * y[0] - x[1] * y[1]
    assert prod[1] == x[0] * y[1] + x[1] * y[0]


def test_quaternion_table():
    i = basis_element(4, 1)
    j = basis_element(4, 2)
    k = basis_element(4, 3)
    assert multiply(i, j) == k
    assert multiply(j, k) == i
    assert multiply(k, i) == j
    assert multiply(j, i) == tuple(-c for c in k)
    assert multiply(i, i) == tuple(-c for c in basis_element(4, 0))


def test_quaternions_associative():
    rng = random.Random(3)
    for _ in range(10):
        x, y, z = (_random_element(rng, 4) for _ in range(3))
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_octonion_basis_units():
    one = basis_element(8, 0)
    for k in range(8):
        e = basis_element(8, k)
        assert multiply(one, e) == e
        assert multiply(e, one) == e
        if k:
            assert multiply(e, e) == tuple(-c for c in one)
    for a, b in itertools.combinations(range(1, 8), 2):
        ea, eb = basis_element(8, a), basis_element(8, b)
        assert multiply(ea, eb) == tuple(-c for c in multiply(eb, ea))


def test_octonions_not_associative():
    e1, e2, e4 = (basis_element(8, k) for k in (1, 2, 4))
    assert multiply(multiply(e1, e2), e4) != multiply(e1, multiply(e2, e4))


def test_octonion_alternativity():
    rng = random.Random(9)
    for _ in range(10):
        x = _random_element(rng, 8)
        y = _random_element(rng, 8)
        assert multiply(multiply(x, x), y) == multiply(x, multiply(x, y))
        assert multiply(y, multiply(x, x)) == multiply(multiply(y, x), x)


def test_left_alternative_inverse_law():
    # x (conj(x) y) = N(x) y, the law behind the Cayley frame containing v
    rng = random.Random(11)
    for _ in range(10):
        x = _random_element(rng, 8)
        y = _random_element(rng, 8)
        lhs = multiply(x, multiply(conj(x), y))
        assert lhs == tuple(norm_sq(x) * c for c in y)


def test_norm_multiplicative():
    rng = random.Random(13)
    for dim in (2, 4, 8):
        for _ in range(8):
            x = _random_element(rng, dim)
            y = _random_element(rng, dim)
            assert norm_sq(multiply(x, y)) == norm_sq(x) * norm_sq(y)


def test_inverse():
    rng = random.Random(17)
    for dim in (2, 4, 8):
        x = _random_element(rng, dim)
        if not any(x):
            continue
        assert multiply(x, inverse(x)) == basis_element(dim, 0)
        assert multiply(inverse(x), x) == basis_element(dim, 0)


def test_mult_matrices():
    rng = random.Random(19)
    q = _random_element(rng, 4)
    x = _random_element(rng, 4)
    r = right_mult_matrix(q)
    l = left_mult_matrix(q)
    rx = tuple(sum(r[i][j] * x[j] for j in range(4)) for i in range(4))
    lx = tuple(sum(l[i][j] * x[j] for j in range(4)) for i in range(4))
    assert rx == multiply(x, q)
    assert lx == multiply(q, x)
