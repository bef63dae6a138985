"""Curvature models of the four negatively curved rank-one families.

Each model is pinned at a single point: the curvature tensor of the symmetric
metric (sectional curvature in [-4, -1]), the compatible parallel structures
(complex/quaternionic J's, the octonionic Cayley planes), and the adapted
frames diagonalizing the radial Jacobi operator with squared eigenvalues
0, 4, 1. Everything is exact over the rationals.

Sign conventions, fixed once here: R(W, v)v = sum_j lam_j^2 <W, Y_j> Y_j on
the adapted frame at unit v, equivalently g(R(v, w)v, w) = -1 for orthonormal
v, w in a real-type plane. The closed curvature formulas below realize this.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import octonion
from .linalg import invert
from .scalar import Scalar
from .spheres import random_rational_unit_vector

Vector = tuple[Scalar, ...]
Matrix = tuple[tuple[Scalar, ...], ...]

FAMILIES = ("real", "complex", "quaternion", "octonion")


class UnsupportedGeometryError(ValueError):
    """Raised when an operation is undefined for the requested family."""


@dataclass(frozen=True)
class GeometryKind:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown geometry family: {self.family!r}")
        n = self.n
        if self.family == "real" and n < 2:
            raise ValueError("real family needs n >= 2")
        if self.family == "complex" and (n < 4 or n % 2):
            raise ValueError("complex family needs even n >= 4")
        if self.family == "quaternion" and (n < 8 or n % 4):
            raise ValueError("quaternionic family needs n >= 8 divisible by 4")
        if self.family == "octonion" and n != 16:
            raise ValueError("octonionic family is 16-dimensional")

    def __str__(self) -> str:
        return f"{self.family}:{self.n}"


def real_kind(n: int) -> GeometryKind:
    return GeometryKind("real", n)


def complex_kind(n: int) -> GeometryKind:
    return GeometryKind("complex", n)


def quaternion_kind(n: int) -> GeometryKind:
    return GeometryKind("quaternion", n)


def octonion_kind() -> GeometryKind:
    return GeometryKind("octonion", 16)


def kind_from_name(family: str, n: int) -> GeometryKind:
    return GeometryKind(family, n)


# -- small exact matrix helpers ------------------------------------------------


def as_vector(v: Sequence) -> Vector:
    return tuple(Scalar.of(x) for x in v)


def dot(u: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
    total = Scalar(0)
    for a, b in zip(u, w):
        total = total + Scalar.of(a) * Scalar.of(b)
    return total


def mat_apply(m: Matrix, v: Sequence[Scalar]) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    cs = Scalar.of(c)
    return tuple(tuple(cs * x for x in row) for row in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Scalar(1 if r == c else 0) for c in range(n)) for r in range(n))


def outer(u: Sequence[Scalar], w: Sequence[Scalar]) -> Matrix:
    return tuple(tuple(Scalar.of(a) * Scalar.of(b) for b in w) for a in u)


def structure_columns(m: Matrix) -> list[list[tuple[int, Scalar]]]:
    """Sparse column view used by SymTensor.compose_columns."""
    n = len(m)
    cols: list[list[tuple[int, Scalar]]] = [[] for _ in range(n)]
    for r in range(n):
        for c in range(n):
            if not m[r][c].is_zero():
                cols[c].append((r, m[r][c]))
    return cols


# -- parallel structures -------------------------------------------------------


@lru_cache(maxsize=None)
def complex_structure(n: int) -> Matrix:
    """J pairing coordinates (0,1), (2,3), ...: J e_{2k} = e_{2k+1}."""
    rows = [[Scalar(0)] * n for _ in range(n)]
    for k in range(n // 2):
        rows[2 * k + 1][2 * k] = Scalar(1)
        rows[2 * k][2 * k + 1] = Scalar(-1)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def quaternion_structures(n: int) -> tuple[Matrix, Matrix, Matrix]:
    """J_1, J_2, J_3 acting blockwise with J_1 J_2 = J_3.

    Realized as right quaternion multiplication by i, j, -k on each
    4-dimensional coordinate block.
    """
    units = [
        (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(0), Fraction(-1)),
    ]
    out = []
    for q in units:
        block = octonion.right_mult_matrix(q)
        rows = [[Scalar(0)] * n for _ in range(n)]
        for blk in range(n // 4):
            for r in range(4):
                for c in range(4):
                    rows[4 * blk + r][4 * blk + c] = Scalar(block[r][c])
        out.append(tuple(tuple(r) for r in rows))
    return out[0], out[1], out[2]


def rotation_from_unit_quaternion(q: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    """SO(3) matrix of conjugation by a unit quaternion."""
    a, b, c, d = q
    if a * a + b * b + c * c + d * d != 1:
        raise ValueError("quaternion must be unit")
    return (
        (a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)),
        (2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)),
        (2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d),
    )


def rotate_quaternion_structures(
    structures: tuple[Matrix, Matrix, Matrix], q: Sequence[Fraction]
) -> tuple[Matrix, Matrix, Matrix]:
    """Rotate the J-triple by an SO(3) matrix; yields another lawful triple."""
    rot = rotation_from_unit_quaternion(q)
    n = len(structures[0])
    out = []
    for a in range(3):
        acc = tuple(tuple(Scalar(0) for _ in range(n)) for _ in range(n))
        for b in range(3):
            acc = mat_add(acc, mat_scale(structures[b], rot[a][b]))
        out.append(acc)
    return out[0], out[1], out[2]


def structures_of(kind: GeometryKind) -> tuple[Matrix, ...]:
    if kind.family == "complex":
        return (complex_structure(kind.n),)
    if kind.family == "quaternion":
        return quaternion_structures(kind.n)
    return ()


# -- Lyapunov data ---------------------------------------------------------------


def lyapunov_sq_multiset(kind: GeometryKind) -> tuple[int, ...]:
    """Squared Lyapunov-type eigenvalues along a radial direction, sorted
    with the 0 of the direction itself first."""
    n = kind.n
    if kind.family == "real":
        return (0,) + (1,) * (n - 1)
    if kind.family == "complex":
        return (0, 4) + (1,) * (n - 2)
    if kind.family == "quaternion":
        return (0, 4, 4, 4) + (1,) * (n - 4)
    return (0,) + (4,) * 7 + (1,) * 8


def sum_lambda_sq(kind: GeometryKind) -> int:
    return sum(lyapunov_sq_multiset(kind))


def ricci_constant(kind: GeometryKind) -> int:
    """c with sum_i R(e_i, X) e_i = c X; negative for these models."""
    return -sum_lambda_sq(kind)


# -- curvature ---------------------------------------------------------------------


def curvature_apply(
    kind: GeometryKind, x: Sequence[Scalar], y: Sequence[Scalar], z: Sequence[Scalar]
) -> Vector:
    """R(X, Y)Z from the closed formula; unavailable octonionically.

    The octonionic model has no parallel endomorphism basis, so only the
    adapted-frame contractions exist; use curvature_contract for those.
    """
    if kind.family == "octonion":
        raise UnsupportedGeometryError(
            "octonionic curvature has no closed slot formula here; "
            "use curvature_contract(kind, W, v) for radial contractions"
        )
    xv, yv, zv = as_vector(x), as_vector(y), as_vector(z)
    gyz = dot(yv, zv)
    gxz = dot(xv, zv)
    out = [gyz * a - gxz * b for a, b in zip(xv, yv)]
    for j in structures_of(kind):
        jx = mat_apply(j, xv)
        jy = mat_apply(j, yv)
        jz = mat_apply(j, zv)
        c1 = dot(jy, zv)
        c2 = dot(jx, zv)
        c3 = dot(xv, jy) * Scalar(2)
        for i in range(kind.n):
            out[i] = out[i] + c1 * jx[i] - c2 * jy[i] + c3 * jz[i]
    return tuple(out)


def curvature_contract(kind: GeometryKind, w: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    """R(W, v)v for unit v, via the Jacobi eigenspace projections."""
    wv, vv = as_vector(w), as_vector(v)
    if dot(vv, vv) != Scalar(1):
        raise ValueError("curvature_contract needs a unit direction v")
    p0w = tuple(dot(wv, vv) * c for c in vv)
    p4w = [Scalar(0)] * kind.n
    if kind.family == "octonion":
        frame = cayley_frame(vv)
        for vec, lam in zip(frame.vectors, frame.lam_sq):
            if lam == 4:
                coef = dot(wv, vec)
                for i in range(kind.n):
                    p4w[i] = p4w[i] + coef * vec[i]
    else:
        for j in structures_of(kind):
            jv = mat_apply(j, vv)
            coef = dot(wv, jv)
            for i in range(kind.n):
                p4w[i] = p4w[i] + coef * jv[i]
    return tuple(
        Scalar(4) * p4w[i] + (wv[i] - p0w[i] - p4w[i]) for i in range(kind.n)
    )


def sectional_curvature(kind: GeometryKind, x: Sequence[Scalar], y: Sequence[Scalar]) -> Fraction:
    """K(X, Y) = g(R(X,Y)X, Y) / (|X|^2 |Y|^2 - g(X,Y)^2), exact."""
    xv, yv = as_vector(x), as_vector(y)
    num = dot(curvature_apply(kind, xv, yv, xv), yv)
    den = dot(xv, xv) * dot(yv, yv) - dot(xv, yv) * dot(xv, yv)
    if den.is_zero():
        raise ValueError("degenerate plane")
    val = num / den
    if not val.is_real():
        raise ValueError("sectional curvature must be real")
    return val.re


# -- adapted frames and projections ---------------------------------------------


@dataclass(frozen=True)
class AdaptedFrame:
    """Orthonormal frame with Y_1 the radial direction; lam_sq[j] is the
    squared eigenvalue of the Jacobi operator on vectors[j]."""

    vectors: tuple[Vector, ...]
    lam_sq: tuple[int, ...]

    @property
    def radial(self) -> Vector:
        return self.vectors[0]


def _to_fraction_vector(v: Sequence[Scalar]) -> tuple[Fraction, ...]:
    out = []
    for x in v:
        s = Scalar.of(x)
        if not s.is_real():
            raise ValueError("fiber vectors must be real")
        out.append(s.re)
    return tuple(out)


def cayley_frame(v: Sequence[Scalar]) -> AdaptedFrame:
    """Adapted frame at unit v in the octonionic model.

    v = (a, b) with octonion components; the Cayley plane through v is
    {(x, x m) : x} with m = a^{-1} b, and {(-z conj(m), z) : z} is its
    orthogonal complement. The bases below are exactly orthonormal for any
    rational unit v thanks to the composition law N(xy) = N(x)N(y).
    """
    vf = _to_fraction_vector(v)
    if sum(c * c for c in vf) != 1:
        raise ValueError("cayley_frame needs a unit vector")
    a, b = vf[:8], vf[8:]
    vecs: list[Vector] = []
    if any(a):
        m = octonion.multiply(octonion.inverse(a), b)
        mbar = octonion.conj(m)
        for k in range(8):
            x = octonion.multiply(a, octonion.basis_element(8, k))
            vecs.append(as_vector(x + octonion.multiply(x, m)))
        for k in range(8):
            x = octonion.multiply(a, octonion.basis_element(8, k))
            vecs.append(as_vector(tuple(-c for c in octonion.multiply(x, mbar)) + x))
    else:
        for k in range(8):
            x = octonion.multiply(b, octonion.basis_element(8, k))
            vecs.append(as_vector((Fraction(0),) * 8 + x))
        for k in range(8):
            x = octonion.multiply(b, octonion.basis_element(8, k))
            vecs.append(as_vector(x + (Fraction(0),) * 8))
    return AdaptedFrame(tuple(vecs), (0,) + (4,) * 7 + (1,) * 8)


def jacobi_projectors(kind: GeometryKind, v: Sequence[Scalar]) -> tuple[Matrix, Matrix, Matrix]:
    """(P0, P4, P1): exact orthogonal projections onto the eigenspaces of
    W -> R(W, v)v with eigenvalues 0, 4, 1."""
    vv = as_vector(v)
    if dot(vv, vv) != Scalar(1):
        raise ValueError("jacobi_projectors needs a unit direction")
    n = kind.n
    p0 = outer(vv, vv)
    if kind.family == "octonion":
        frame = cayley_frame(vv)
        p4 = tuple(tuple(Scalar(0) for _ in range(n)) for _ in range(n))
        for vec, lam in zip(frame.vectors, frame.lam_sq):
            if lam == 4:
                p4 = mat_add(p4, outer(vec, vec))
    else:
        p4 = tuple(tuple(Scalar(0) for _ in range(n)) for _ in range(n))
        for j in structures_of(kind):
            jv = mat_apply(j, vv)
            p4 = mat_add(p4, outer(jv, jv))
    p1 = mat_sub(mat_sub(identity_matrix(n), p0), p4)
    return p0, p4, p1


def _group_average(kind: GeometryKind, a: Matrix) -> Matrix:
    js = structures_of(kind)
    if not js:
        return a
    total = a
    for j in js:
        total = mat_sub(total, mat_mul(j, mat_mul(a, j)))
    return mat_scale(total, Fraction(1, len(js) + 1))


def sample_adapted_frame(kind: GeometryKind, rng: random.Random) -> AdaptedFrame:
    """Random exact adapted frame.

    For the matrix families: the Cayley transform O = (I - W)(I + W)^{-1}
    of a random antisymmetric W averaged to commute with the J's is an exact
    rational orthogonal matrix in the structure group, so its columns form
    an adapted frame (the standard basis is adapted and O preserves the
    structures). Octonionically the Cayley-plane frame is built directly.
    """
    n = kind.n
    if kind.family == "octonion":
        v = as_vector(random_rational_unit_vector(rng, n))
        return cayley_frame(v)
    while True:
        rows = [[Scalar(0)] * n for _ in range(n)]
        for r in range(n):
            for c in range(r + 1, n):
                x = Scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
                rows[r][c] = x
                rows[c][r] = -x
        w = _group_average(kind, tuple(tuple(r) for r in rows))
        eye = identity_matrix(n)
        try:
            inv = invert([list(r) for r in mat_add(eye, w)])
        except ValueError:
            continue
        o = mat_mul(mat_sub(eye, w), tuple(tuple(r) for r in inv))
        cols = tuple(tuple(o[r][c] for r in range(n)) for c in range(n))
        if kind.family == "real":
            return AdaptedFrame(cols, (0,) + (1,) * (n - 1))
        # rebuild each structure block from its leading column so the frame
        # reads (u, J_1 u, ...) exactly (raw columns can differ by a sign)
        js = structures_of(kind)
        block = len(js) + 1
        vectors: list[Vector] = []
        for b in range(n // block):
            u = cols[block * b]
            vectors.append(u)
            for j in js:
                vectors.append(mat_apply(j, u))
        lam = (0,) + (4,) * len(js) + (1,) * (n - block)
        return AdaptedFrame(tuple(vectors), lam)


def householder_frame(v: Sequence[Scalar]) -> AdaptedFrame:
    """Real-family frame at an arbitrary rational unit v by reflection."""
    vv = as_vector(v)
    n = len(vv)
    if dot(vv, vv) != Scalar(1):
        raise ValueError("householder_frame needs a unit vector")
    e1 = tuple(Scalar(1 if i == 0 else 0) for i in range(n))
    if vv == e1:
        cols = [tuple(Scalar(1 if r == c else 0) for r in range(n)) for c in range(n)]
    else:
        w = tuple(a - b for a, b in zip(vv, e1))
        ww = dot(w, w)
        cols = []
        for c in range(n):
            coef = Scalar(2) * w[c] / ww
            cols.append(tuple((Scalar(1 if r == c else 0) - coef * w[r]) for r in range(n)))
    return AdaptedFrame(tuple(cols), (0,) + (1,) * (n - 1))
