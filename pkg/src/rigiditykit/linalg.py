"""Exact linear algebra over Gaussian rationals.

Plain Gaussian elimination on lists of Scalar rows. Matrices in this engine
are small (tensor-space dimensions, a few hundred at worst), so clarity and
exactness win over sparsity tricks. A mod-p path provides fast full-rank
witnesses for the larger symbol systems: full column rank modulo a prime
implies full column rank over the rationals, because specializing to GF(p)
can only decrease rank.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import Scalar

Matrix = list[list[Scalar]]


def _clone(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [[Scalar.of(x) for x in row] for row in rows]


def eliminate(rows: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Row-reduce to reduced echelon form; returns (rref, pivot columns)."""
    mat = _clone(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, len(mat)):
            if not mat[k][c].is_zero():
                pivot_row = k
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = Scalar(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for k in range(len(mat)):
            if k != r and not mat[k][c].is_zero():
                f = mat[k][c]
                mat[k] = [a - f * b for a, b in zip(mat[k], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(eliminate(rows)[1])


def nullspace(rows: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    rref, pivots = eliminate(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis: list[list[Scalar]] = []
    for fc in free:
        vec = [Scalar(0)] * ncols
        vec[fc] = Scalar(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar]:
    """Solve A x = b exactly; raises ValueError if inconsistent.

    For underdetermined systems returns the solution with free variables 0.
    """
    if not rows:
        if any(not Scalar.of(b).is_zero() for b in rhs):
            raise ValueError("inconsistent empty system")
        return []
    ncols = len(rows[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    rref, pivots = eliminate(aug)
    for r in range(len(rref)):
        if all(rref[r][c].is_zero() for c in range(ncols)) and not rref[r][ncols].is_zero():
            raise ValueError("inconsistent linear system")
    x = [Scalar(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            raise ValueError("inconsistent linear system")
        x[pc] = rref[r][ncols]
    return x


def invert(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    """Exact inverse of a square matrix."""
    n = len(rows)
    aug = [list(rows[r]) + [Scalar(1 if c == r else 0) for c in range(n)] for r in range(n)]
    rref, pivots = eliminate(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rref]


def mat_vec(rows: Sequence[Sequence[Scalar]], vec: Sequence[Scalar]) -> list[Scalar]:
    return [sum((a * b for a, b in zip(row, vec)), Scalar(0)) for row in rows]


# -- mod-p full-rank witness -------------------------------------------------

_WITNESS_PRIMES = (2147483647, 2305843009213693951, 4611686018427387847)


def _to_residue(x: Scalar, p: int) -> int | None:
    """Map a real rational to GF(p); None when a denominator vanishes mod p."""
    if x.im:
        raise ValueError("mod-p witness supports real matrices only")
    num = x.re.numerator % p
    den = x.re.denominator % p
    if den == 0:
        return None
    return num * pow(den, -1, p) % p


def rank_mod_p(rows: Sequence[Sequence[Scalar]], p: int) -> int | None:
    """Rank of the matrix over GF(p); None if a denominator degenerates."""
    mat: list[list[int]] = []
    for row in rows:
        out = []
        for x in row:
            r = _to_residue(Scalar.of(x), p)
            if r is None:
                return None
            out.append(r)
        mat.append(out)
    if not mat:
        return 0
    ncols = len(mat[0])
    rk = 0
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(mat)):
            if mat[k][c] % p:
                pivot = k
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [v * inv % p for v in mat[r]]
        for k in range(r + 1, len(mat)):
            f = mat[k][c]
            if f:
                mat[k] = [(a - f * b) % p for a, b in zip(mat[k], mat[r])]
        rk += 1
        r += 1
        if r == len(mat):
            break
    return rk


def has_full_column_rank(rows: Sequence[Sequence[Scalar]]) -> bool:
    """Exact full-column-rank test with a fast mod-p certificate.

    A full-rank witness mod p is conclusive (rank over Q >= rank mod p).
    When the witness falls short the exact rational rank decides.
    """
    if not rows:
        return False
    ncols = len(rows[0])
    if len(rows) < ncols:
        return False
    for p in _WITNESS_PRIMES:
        rk = rank_mod_p(rows, p)
        if rk == ncols:
            return True
        if rk is not None:
            break
    return rank(rows) == ncols


def frac(a: int, b: int = 1) -> Scalar:
    """Shorthand used throughout the tests."""
    return Scalar(Fraction(a, b))
