"""Gaussian-rational scalar arithmetic and text round-trips."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from rigiditykit.scalar import Scalar, format_scalar, parse_scalar

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=10**4)


def test_basic_arithmetic():
    a = Scalar(Fraction(1, 2), Fraction(3, 4))
    b = Scalar(Fraction(-2, 3), Fraction(1, 5))
    assert (a + b).re == Fraction(-1, 6)
    assert (a * b).im == a.re * b.im + a.im * b.re
    assert (a - a).is_zero()
    assert a * Scalar(1) == a
    assert -(-a) == a


def test_division_exact():
    a = Scalar(Fraction(2, 3), Fraction(-1, 7))
    b = Scalar(Fraction(5, 2), Fraction(1, 3))
    q = a / b
    assert q * b == a
    assert (Scalar(1) / Scalar(0, 1)) == Scalar(0, -1)


def test_conjugation_and_norm():
    z = Scalar(Fraction(3, 5), Fraction(4, 5))
    assert z * z.conj() == Scalar(z.norm_sq())
    assert z.norm_sq() == Fraction(1)


def test_int_interop():
    z = Scalar(Fraction(1, 2))
    assert z + 1 == Scalar(Fraction(3, 2))
    assert 2 * z == Scalar(1)
    assert z == Fraction(1, 2)


def test_format_parse_examples():
    assert format_scalar(Scalar(Fraction(3, 4))) == "3/4"
    assert format_scalar(Scalar(Fraction(-1, 2), Fraction(5, 6))) == "-1/2+5/6i"
    assert format_scalar(Scalar(0, Fraction(-2, 7))) == "0/1-2/7i"
    assert parse_scalar("3/4") == Scalar(Fraction(3, 4))
    assert parse_scalar("-1/2+5/6i") == Scalar(Fraction(-1, 2), Fraction(5, 6))
    assert parse_scalar("0/1-2/7i") == Scalar(0, Fraction(-2, 7))


@given(rationals, rationals)
def test_format_parse_round_trip(re, im):
    z = Scalar(re, im)
    assert parse_scalar(format_scalar(z)) == z


@given(rationals, rationals, rationals, rationals)
def test_field_axioms_sample(a, b, c, d):
    x = Scalar(a, b)
    y = Scalar(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + Scalar(1)) == x * y + x
    if not y.is_zero():
        assert (x / y) * y == x
