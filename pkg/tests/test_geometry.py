"""Curvature models: structures, symmetries, pinching, adapted frames."""

import random
from fractions import Fraction

import pytest

from rigiditykit.geometry import (
    UnsupportedGeometryError,
    cayley_frame,
    complex_kind,
    complex_structure,
    curvature_apply,
    curvature_contract,
    dot,
    householder_frame,
    identity_matrix,
    jacobi_projectors,
    lyapunov_sq_multiset,
    mat_apply,
    mat_mul,
    octonion_kind,
    quaternion_kind,
    quaternion_structures,
    real_kind,
    ricci_constant,
    rotate_quaternion_structures,
    sample_adapted_frame,
    sectional_curvature,
    sum_lambda_sq,
)
from rigiditykit.scalar import Scalar
from rigiditykit.spheres import random_rational_unit_vector, random_rational_vector


def _rand_vec(rng, n):
    return tuple(Scalar(x) for x in random_rational_vector(rng, n))


def _unit(rng, n):
    return tuple(Scalar(x) for x in random_rational_unit_vector(rng, n))


ALL_KINDS = [real_kind(4), complex_kind(4), complex_kind(6), quaternion_kind(8)]


def test_kind_validation():
    with pytest.raises(ValueError):
        complex_kind(5)
    with pytest.raises(ValueError):
        quaternion_kind(10)
    with pytest.raises(ValueError):
        real_kind(1)


def test_complex_structure_is_orthogonal_anticommuting():
    for n in (4, 6, 8):
        j = complex_structure(n)
        eye = identity_matrix(n)
        jj = mat_mul(j, j)
        assert jj == tuple(tuple(-x for x in row) for row in eye)
        # antisymmetry doubles as orthogonality given J^2 = -I
        assert all(j[r][c] == -j[c][r] for r in range(n) for c in range(n))


def test_quaternion_structure_triple():
    n = 8
    j1, j2, j3 = quaternion_structures(n)
    eye = identity_matrix(n)
    minus_eye = tuple(tuple(-x for x in row) for row in eye)
    for j in (j1, j2, j3):
        assert mat_mul(j, j) == minus_eye
    assert mat_mul(j1, j2) == j3
    assert mat_mul(j2, j3) == j1
    assert mat_mul(j3, j1) == j2
    anti = tuple(tuple(-x for x in row) for row in mat_mul(j2, j1))
    assert mat_mul(j1, j2) == anti


def test_rotated_quaternion_structures_stay_lawful():
    n = 8
    js = quaternion_structures(n)
    q = random_rational_unit_vector(random.Random(5), 4)
    r1, r2, r3 = rotate_quaternion_structures(js, q)
    eye = identity_matrix(n)
    minus_eye = tuple(tuple(-x for x in row) for row in eye)
    for j in (r1, r2, r3):
        assert mat_mul(j, j) == minus_eye
    assert mat_mul(r1, r2) == r3


def test_curvature_symmetries():
    rng = random.Random(23)
    for kind in ALL_KINDS:
        n = kind.n
        x, y, z, w = (_rand_vec(rng, n) for _ in range(4))
        rxyz = curvature_apply(kind, x, y, z)
        # antisymmetry in the first pair
        assert curvature_apply(kind, y, x, z) == tuple(-c for c in rxyz)
        # antisymmetry in the second pair: <R(X,Y)Z, W> = -<R(X,Y)W, Z>
        assert dot(rxyz, w) == -dot(curvature_apply(kind, x, y, w), z)
        # pair symmetry
        assert dot(rxyz, w) == dot(curvature_apply(kind, z, w, x), y)
        # first Bianchi
        total = [
            a + b + c
            for a, b, c in zip(
                rxyz,
                curvature_apply(kind, y, z, x),
                curvature_apply(kind, z, x, y),
            )
        ]
        assert all(t.is_zero() for t in total)


def test_sectional_pinching_exact():
    rng = random.Random(29)
    for kind in ALL_KINDS:
        for _ in range(15):
            x = _rand_vec(rng, kind.n)
            y = _rand_vec(rng, kind.n)
            try:
                k = sectional_curvature(kind, x, y)
            except ValueError:
                continue
            assert Fraction(-4) <= k <= Fraction(-1)
        if kind.family == "real":
            v = _unit(rng, kind.n)
            w = curvature_contract(kind, _rand_vec(rng, kind.n), v)
            # real family is constant curvature -1
            x = _rand_vec(rng, kind.n)
            y = _rand_vec(rng, kind.n)
            try:
                assert sectional_curvature(kind, x, y) == Fraction(-1)
            except ValueError:
                pass


def test_contract_matches_apply_on_matrix_families():
    rng = random.Random(31)
    for kind in ALL_KINDS:
        for _ in range(10):
            v = _unit(rng, kind.n)
            w = _rand_vec(rng, kind.n)
            assert curvature_contract(kind, w, v) == curvature_apply(kind, w, v, v)


def test_frame_sections_hit_both_pinching_walls():
    rng = random.Random(37)
    for kind in ALL_KINDS:
        frame = sample_adapted_frame(kind, rng)
        v = frame.radial
        seen = set()
        for vec, lam in zip(frame.vectors[1:], frame.lam_sq[1:]):
            k = sectional_curvature(kind, v, vec)
            assert k == Fraction(-lam)
            seen.add(k)
        if kind.family == "real":
            assert seen == {Fraction(-1)}
        else:
            assert seen == {Fraction(-1), Fraction(-4)}


def test_adapted_frames_orthonormal_and_structure_aligned():
    rng = random.Random(41)
    for kind in ALL_KINDS:
        frame = sample_adapted_frame(kind, rng)
        n = kind.n
        assert len(frame.vectors) == n
        for a in range(n):
            for b in range(a, n):
                expected = Scalar(1 if a == b else 0)
                assert dot(frame.vectors[a], frame.vectors[b]) == expected
        if kind.family == "complex":
            j = complex_structure(n)
            assert frame.vectors[1] == mat_apply(j, frame.radial)
        if kind.family == "quaternion":
            for a, j in enumerate(quaternion_structures(n)):
                assert frame.vectors[1 + a] == mat_apply(j, frame.radial)


def test_householder_frame():
    rng = random.Random(43)
    v = _unit(rng, 5)
    frame = householder_frame(v)
    assert frame.vectors[0] == v
    for a in range(5):
        for b in range(a, 5):
            assert dot(frame.vectors[a], frame.vectors[b]) == Scalar(1 if a == b else 0)


def test_cayley_frame_orthonormal_contains_v():
    rng = random.Random(47)
    for _ in range(5):
        v = _unit(rng, 16)
        frame = cayley_frame(v)
        assert frame.vectors[0] == v
        for a in range(16):
            for b in range(a, 16):
                assert dot(frame.vectors[a], frame.vectors[b]) == Scalar(1 if a == b else 0)
    # a = 0 corner: v supported in the second octonion factor
    v0 = tuple(Scalar(0) for _ in range(8)) + tuple(
        Scalar(x) for x in random_rational_unit_vector(rng, 8)
    )
    frame = cayley_frame(v0)
    assert frame.vectors[0] == v0
    for a in range(16):
        for b in range(a, 16):
            assert dot(frame.vectors[a], frame.vectors[b]) == Scalar(1 if a == b else 0)


def test_octonion_contract_eigenvalues():
    rng = random.Random(53)
    kind = octonion_kind()
    v = _unit(rng, 16)
    frame = cayley_frame(v)
    for vec, lam in zip(frame.vectors, frame.lam_sq):
        out = curvature_contract(kind, vec, v)
        assert out == tuple(Scalar(lam) * c for c in vec)


def test_octonion_apply_raises():
    kind = octonion_kind()
    v = tuple(Scalar(1 if i == 0 else 0) for i in range(16))
    with pytest.raises(UnsupportedGeometryError):
        curvature_apply(kind, v, v, v)


def test_jacobi_projectors_resolution():
    rng = random.Random(59)
    for kind in ALL_KINDS + [octonion_kind()]:
        v = _unit(rng, kind.n)
        p0, p4, p1 = jacobi_projectors(kind, v)
        eye = identity_matrix(kind.n)
        total = tuple(
            tuple(a + b + c for a, b, c in zip(r0, r4, r1))
            for r0, r4, r1 in zip(p0, p4, p1)
        )
        assert total == eye
        for p in (p0, p4, p1):
            assert mat_mul(p, p) == p
        multiplicity = sum(1 for lam in lyapunov_sq_multiset(kind) if lam == 4)
        trace_p4 = sum((p4[i][i] for i in range(kind.n)), Scalar(0))
        assert trace_p4 == Scalar(multiplicity)
        # contraction equals 4 P4 + P1 applied
        w = _rand_vec(rng, kind.n)
        via_proj = tuple(
            Scalar(4) * a + b for a, b in zip(mat_apply(p4, w), mat_apply(p1, w))
        )
        assert curvature_contract(kind, w, v) == via_proj


def test_lyapunov_multisets_frozen():
    assert sum_lambda_sq(real_kind(5)) == 4
    assert sum_lambda_sq(complex_kind(6)) == 8
    assert sum_lambda_sq(quaternion_kind(8)) == 16
    assert sum_lambda_sq(octonion_kind()) == 36
    lam = lyapunov_sq_multiset(octonion_kind())
    assert lam.count(4) == 7 and lam.count(1) == 8 and lam.count(0) == 1


def test_ricci_contraction_constant():
    rng = random.Random(61)
    for kind in ALL_KINDS:
        n = kind.n
        x = _rand_vec(rng, n)
        total = [Scalar(0)] * n
        for i in range(n):
            e = tuple(Scalar(1 if k == i else 0) for k in range(n))
            r = curvature_apply(kind, e, x, e)
            total = [a + b for a, b in zip(total, r)]
        expected = tuple(Scalar(ricci_constant(kind)) * c for c in x)
        assert tuple(total) == expected
