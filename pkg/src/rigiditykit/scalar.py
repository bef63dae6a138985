"""Exact Gaussian-rational scalars.

Every quantity in the engine is a complex number with rational real and
imaginary parts, held exactly. There is deliberately no float path: equality
tests downstream are exact dictionary comparisons, so a single rounding
anywhere would poison every verdict built on top of it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


class Scalar:
    """A Gaussian rational, re + im*i, with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(value: "Scalar | RationalLike") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar(value)

    @staticmethod
    def i() -> "Scalar":
        return Scalar(0, 1)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = Scalar.of(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Scalar.of(other)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = Scalar.of(other)
        return Scalar(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        o = Scalar.of(other)
        if not self.im and not o.im:
            return Scalar(self.re * o.re)
        return Scalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar.of(other)
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return Scalar(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        return Scalar.of(other) / self

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    # -- comparisons and hashing ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting ------------------------------------------------------

    def __repr__(self) -> str:
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_scalar(z: Scalar) -> str:
    """Canonical text form: re_num/re_den, with optional +-im_num/im_deni."""
    if not z.im:
        return _format_fraction(z.re)
    sign = "+" if z.im >= 0 else "-"
    return f"{_format_fraction(z.re)}{sign}{_format_fraction(abs(z.im))}i"


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical text form produced by format_scalar.

    Accepts integer shorthands for either part ("3" for "3/1").
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    if s.endswith("i"):
        body = s[:-1]
        # split at the last +/- that is not a leading sign and not inside
        # a fraction (fractions contain only digits and '/')
        idx = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-":
                idx = k
                break
        if idx is None:
            return Scalar(0, _parse_fraction(body))
        re_part = body[:idx]
        im_part = body[idx:]
        return Scalar(_parse_fraction(re_part), _parse_fraction(im_part))
    return Scalar(_parse_fraction(s))


def _parse_fraction(text: str) -> Fraction:
    t = text
    if t in ("+", "-", ""):
        raise ValueError(f"bad rational literal: {text!r}")
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal: {text!r}") from exc
