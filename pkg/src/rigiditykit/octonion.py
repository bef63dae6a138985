"""Exact Cayley-Dickson algebras: complexes, quaternions, octonions.

Elements are tuples of Fractions. Multiplication is table-driven; the tables
are built once by the doubling recursion (a,b)(c,d) = (ac - conj(d) b,
d a + b conj(c)), so every identity downstream (alternativity, norm
composition, the Cayley-plane frames) traces back to this single formula.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Element = tuple[Fraction, ...]


@lru_cache(maxsize=None)
def _basis_product(dim: int, i: int, j: int) -> tuple[int, int]:
    """e_i * e_j in the dimension-dim algebra, as (sign, index)."""
    if dim == 1:
        return (1, 0)
    half = dim // 2
    # e_i = (x, 0) or (0, x); conjugation flips the sign of every
    # non-identity basis unit, at every level of the recursion
    ai, bi = (i, None) if i < half else (None, i - half)
    aj, bj = (j, None) if j < half else (None, j - half)

    def conj_sign(k: int) -> int:
        return 1 if k == 0 else -1

    if ai is not None and aj is not None:
        # (a,0)(c,0) = (ac, 0)
        s, k = _basis_product(half, ai, aj)
        return (s, k)
    if ai is not None and bj is not None:
        # (a,0)(0,d) = (0, d a)
        s, k = _basis_product(half, bj, ai)
        return (s, k + half)
    if bi is not None and aj is not None:
        # (0,b)(c,0) = (0, b conj(c))
        s, k = _basis_product(half, bi, aj)
        return (s * conj_sign(aj), k + half)
    # (0,b)(0,d) = (-conj(d) b, 0)
    s, k = _basis_product(half, bj, bi)
    return (-s * conj_sign(bj), k)


def multiply(x: Sequence[Fraction], y: Sequence[Fraction]) -> Element:
    dim = len(x)
    if len(y) != dim:
        raise ValueError("algebra dimension mismatch")
    out = [Fraction(0)] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            s, k = _basis_product(dim, i, j)
            out[k] += s * xi * yj
    return tuple(out)


def conj(x: Sequence[Fraction]) -> Element:
    return (x[0],) + tuple(-c for c in x[1:])


def norm_sq(x: Sequence[Fraction]) -> Fraction:
    return sum(c * c for c in x)


def inverse(x: Sequence[Fraction]) -> Element:
    n = norm_sq(x)
    if not n:
        raise ZeroDivisionError("zero element has no inverse")
    return tuple(c / n for c in conj(x))


def basis_element(dim: int, k: int) -> Element:
    return tuple(Fraction(1 if i == k else 0) for i in range(dim))


def right_mult_matrix(q: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix rows of x -> x * q in the standard basis."""
    dim = len(q)
    cols = [multiply(basis_element(dim, b), q) for b in range(dim)]
    return tuple(tuple(cols[b][r] for b in range(dim)) for r in range(dim))


def left_mult_matrix(q: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix rows of x -> q * x in the standard basis."""
    dim = len(q)
    cols = [multiply(q, basis_element(dim, b)) for b in range(dim)]
    return tuple(tuple(cols[b][r] for b in range(dim)) for r in range(dim))
