"""Exact sphere moments and rational unit vectors."""

import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from rigiditykit.scalar import Scalar
from rigiditykit.spheres import (
    monomial_average,
    poly_laplacian,
    poly_mul,
    poly_sphere_average,
    random_rational_unit_vector,
    rational_unit_vector,
)


def test_low_moments_frozen():
    # avg v1^2 = 1/n and avg v1^4 = 3/(n(n+2))
    for n in (2, 3, 4, 8, 16):
        e2 = tuple([2] + [0] * (n - 1))
        e4 = tuple([4] + [0] * (n - 1))
        assert monomial_average(n, e2) == Fraction(1, n)
        assert monomial_average(n, e4) == Fraction(3, n * (n + 2))


def test_odd_moments_vanish():
    n = 4
    assert monomial_average(n, (1, 2, 0, 0)) == 0
    assert monomial_average(n, (3, 0, 0, 0)) == 0
    assert monomial_average(n, (1, 1, 1, 1)) == Fraction(0)


def test_mixed_moment():
    # avg v1^2 v2^2 = 1/(n(n+2))
    for n in (3, 4, 6):
        expo = tuple([2, 2] + [0] * (n - 2))
        assert monomial_average(n, expo) == Fraction(1, n * (n + 2))


def test_norm_polynomial_averages_to_one():
    # sum_i v_i^2 averages to 1, and (sum_i v_i^2)^2 as well
    n = 5
    norm_sq = {}
    for i in range(n):
        expo = [0] * n
        expo[i] = 2
        norm_sq[tuple(expo)] = Scalar(1)
    assert poly_sphere_average(n, norm_sq) == Scalar(1)
    assert poly_sphere_average(n, poly_mul(norm_sq, norm_sq)) == Scalar(1)


def test_poly_laplacian():
    # d^2/dx^2 + d^2/dy^2 of x^2 y is 2y
    poly = {(2, 1): Scalar(1)}
    assert poly_laplacian(poly) == {(0, 1): Scalar(2)}


@given(
    st.lists(
        st.fractions(min_value=-20, max_value=20, max_denominator=7),
        min_size=3,
        max_size=3,
    )
)
def test_stereographic_points_are_unit(params):
    vec = rational_unit_vector(4, params)
    assert sum(x * x for x in vec) == 1


def test_random_unit_vector_seeded():
    rng = random.Random(5)
    v = random_rational_unit_vector(rng, 6)
    assert sum(x * x for x in v) == 1
    rng2 = random.Random(5)
    assert random_rational_unit_vector(rng2, 6) == v
