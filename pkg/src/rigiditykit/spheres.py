"""Exact averages over round spheres and rational points on them.

Monomial moments over S^{n-1} have the classical double-factorial closed
form; everything downstream (fiber pairings, conformal ratios, averaging
identities) reduces to these exact rationals. Rational unit vectors come
from the stereographic parametrization, which is a bijection between Q^{n-1}
and the rational points of the sphere minus one pole.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .scalar import Scalar


@lru_cache(maxsize=None)
def monomial_average(n: int, expo: tuple[int, ...]) -> Fraction:
    """Average of prod_i v_i^{e_i} over the unit sphere S^{n-1}.

    Zero when any exponent is odd; otherwise
    prod_i (e_i - 1)!! / prod_{k=0}^{d/2-1} (n + 2k), d = sum e_i.
    """
    if len(expo) != n:
        raise ValueError("exponent vector length must equal the dimension")
    if any(e % 2 for e in expo):
        return Fraction(0)
    num = 1
    for e in expo:
        for odd in range(1, e, 2):
            num *= odd
    den = 1
    d = sum(expo)
    for k in range(d // 2):
        den *= n + 2 * k
    return Fraction(num, den)


def poly_sphere_average(n: int, poly: dict[tuple[int, ...], Scalar]) -> Scalar:
    """Exact average of a polynomial (exponent-vector coefficient map)."""
    total = Scalar(0)
    for expo, coeff in poly.items():
        mom = monomial_average(n, expo)
        if mom:
            total = total + coeff * Scalar(mom)
    return total


def poly_mul(
    a: dict[tuple[int, ...], Scalar], b: dict[tuple[int, ...], Scalar]
) -> dict[tuple[int, ...], Scalar]:
    out: dict[tuple[int, ...], Scalar] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            term = ca * cb
            cur = out.get(e)
            out[e] = term if cur is None else cur + term
    return {e: c for e, c in out.items() if not c.is_zero()}


def poly_conj(a: dict[tuple[int, ...], Scalar]) -> dict[tuple[int, ...], Scalar]:
    return {e: c.conj() for e, c in a.items()}


def poly_add(
    a: dict[tuple[int, ...], Scalar], b: dict[tuple[int, ...], Scalar]
) -> dict[tuple[int, ...], Scalar]:
    out = dict(a)
    for e, c in b.items():
        cur = out.get(e)
        s = c if cur is None else cur + c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def poly_scale(a: dict[tuple[int, ...], Scalar], c) -> dict[tuple[int, ...], Scalar]:
    cs = Scalar.of(c)
    if cs.is_zero():
        return {}
    return {e: cs * v for e, v in a.items()}


def poly_laplacian(a: dict[tuple[int, ...], Scalar]) -> dict[tuple[int, ...], Scalar]:
    """Flat Laplacian sum_i d^2/dv_i^2 on the coefficient map."""
    out: dict[tuple[int, ...], Scalar] = {}
    for expo, coeff in a.items():
        for i, e in enumerate(expo):
            if e >= 2:
                new = list(expo)
                new[i] = e - 2
                key = tuple(new)
                term = coeff * Scalar(e * (e - 1))
                cur = out.get(key)
                out[key] = term if cur is None else cur + term
    return {e: c for e, c in out.items() if not c.is_zero()}


def rational_unit_vector(n: int, params: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Stereographic image of params in Q^{n-1}: an exact unit vector."""
    if len(params) != n - 1:
        raise ValueError("need n-1 stereographic parameters")
    s = sum(p * p for p in params)
    den = 1 + s
    head = (1 - s) / den
    rest = tuple(2 * p / den for p in params)
    return (head,) + rest


def random_rational_unit_vector(rng, n: int) -> tuple[Fraction, ...]:
    while True:
        params = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n - 1)]
        vec = rational_unit_vector(n, params)
        if any(vec):
            return vec


def random_rational_vector(rng, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n))
