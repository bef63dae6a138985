"""Fiber harmonics: decomposition, vertical spectra, exact pairings."""

import random
from fractions import Fraction

import pytest

from rigiditykit.fiber import (
    FiberElement,
    conformal_ratio,
    fiber_energy_constant,
    fiber_triple_residuals,
    isotropic_witness,
    v_minimal_polynomial_residual,
    vertical_spectrum,
)
from rigiditykit.geometry import complex_kind, complex_structure
from rigiditykit.scalar import Scalar
from rigiditykit.spheres import poly_add, poly_laplacian, poly_mul, poly_scale
from rigiditykit.tensors import (
    SymTensor,
    metric,
    random_tensor,
    trace_decompose,
    trace_free_part,
)


def _norm_poly(n):
    out = {}
    for i in range(n):
        e = [0] * n
        e[i] = 2
        out[tuple(e)] = Scalar(1)
    return out


def _random_trace_free(rng, n, m, complex_values=False):
    return trace_free_part(random_tensor(rng, n, m, complex_values=complex_values))


def test_from_tensor_polynomial_identity():
    # pi^* S equals the sum of harmonic pullbacks times powers of |v|^2,
    # as an identity of unrestricted polynomials
    rng = random.Random(3)
    for n, m in [(4, 2), (4, 3), (4, 4), (6, 2)]:
        s = random_tensor(rng, n, m)
        parts = trace_decompose(s)
        norm = _norm_poly(n)
        total = {}
        for k, u in enumerate(parts):
            piece = u.to_poly()
            for _ in range(k):
                piece = poly_mul(piece, norm)
            total = poly_add(total, piece)
        assert total == s.to_poly()
        fe = FiberElement.from_tensor(s)
        for k, u in enumerate(parts):
            assert fe.component(m - 2 * k) == u


def test_v_minimal_polynomial():
    rng = random.Random(5)
    for n in (4, 6):
        j = complex_structure(n)
        for m in (1, 2, 3):
            f = FiberElement(n, {m: _random_trace_free(rng, n, m, True)})
            assert v_minimal_polynomial_residual(f, j).is_zero()


def test_isotropic_witnesses_hit_every_eigenvalue():
    for n in (4, 6):
        j = complex_structure(n)
        for m in (1, 2, 3):
            hit = set()
            for k in range(m + 1):
                w = isotropic_witness(n, j, m, k)
                assert not w.is_zero()
                lam = m - 2 * k
                assert w.apply_v(j) == w.scale(Scalar(0, lam))
                hit.add(lam)
            assert hit == set(vertical_spectrum(complex_kind(n), m))


def test_spectral_triple_residuals_vanish():
    rng = random.Random(7)
    n = 4
    j = complex_structure(n)
    for _ in range(10):
        f = FiberElement(
            n,
            {
                1: _random_trace_free(rng, n, 1, True),
                2: _random_trace_free(rng, n, 2, True),
                3: _random_trace_free(rng, n, 3, True),
            },
        )
        r1, r2, r3 = fiber_triple_residuals(f, j)
        assert r1.is_zero()
        assert r2.is_zero()
        assert r3.is_zero()


def test_twist_squares_to_degree_parity():
    rng = random.Random(9)
    n = 4
    j = complex_structure(n)
    for m in (1, 2, 3):
        f = FiberElement(n, {m: _random_trace_free(rng, n, m)})
        jj = f.apply_j(j).apply_j(j)
        assert jj == f.scale((-1) ** m)


def test_eigenprojection_eigenproperty():
    rng = random.Random(11)
    n = 4
    j = complex_structure(n)
    f = FiberElement(n, {3: _random_trace_free(rng, n, 3, True)})
    for lam in (3, 1, -1, -3):
        p = f.v_eigencomponent(j, lam)
        assert p.apply_v(j) == p.scale(Scalar(0, lam))


def test_components_are_euclidean_harmonic():
    # independent harmonicity witness: the flat Laplacian of the pullback
    # polynomial of a trace-free component vanishes identically
    rng = random.Random(13)
    for n, m in [(4, 2), (4, 3), (6, 2)]:
        t = _random_trace_free(rng, n, m)
        assert poly_laplacian(t.to_poly()) == {}


def test_vertical_laplacian_eigenvalues():
    rng = random.Random(17)
    n = 4
    t = _random_trace_free(rng, n, 3)
    f = FiberElement(n, {3: t})
    assert f.vertical_laplacian() == f.scale(3 * (n + 3 - 2))
    # the constant component of pi_2^* g0 has eigenvalue 0
    g = FiberElement.from_tensor(metric(n))
    assert g.degrees() == [0]
    assert g.vertical_laplacian().is_zero()


def test_sphere_pair_cross_degree_orthogonality():
    rng = random.Random(19)
    n = 4
    f2 = FiberElement(n, {2: _random_trace_free(rng, n, 2)})
    f0 = FiberElement(n, {0: SymTensor(n, 0, {(): Scalar(1)})})
    f3 = FiberElement(n, {3: _random_trace_free(rng, n, 3)})
    assert f2.sphere_pair(f0).is_zero()
    assert f2.sphere_pair(f3).is_zero()
    assert not f2.sphere_pair(f2).is_zero()


def test_fiber_energy_constants_frozen():
    # Lambda_m = prod_{k<m}(n+2k) / (m!)^2 under the normalized inner product
    rng = random.Random(23)
    for n in (4, 6):
        samples = {
            m: [_random_trace_free(rng, n, m) for _ in range(3)] for m in (0, 1, 2, 3)
        }
        assert fiber_energy_constant(n, 0, samples[0]) == 1
        assert fiber_energy_constant(n, 1, samples[1]) == n
        assert fiber_energy_constant(n, 2, samples[2]) == Fraction(n * (n + 2), 4)
        assert fiber_energy_constant(n, 3, samples[3]) == Fraction(
            n * (n + 2) * (n + 4), 36
        )


def test_conformal_ratios_both_conventions():
    rng = random.Random(29)
    for n in (4, 6, 8):
        if n % 2:
            continue
        samples = {
            m: [_random_trace_free(rng, n, m) for _ in range(2)] for m in (0, 1, 2)
        }
        # normalized (1/m!) convention
        assert conformal_ratio(n, 0, 1, samples[0], samples[1]) == Fraction(1, n)
        assert conformal_ratio(n, 2, 1, samples[2], samples[1]) == Fraction(n + 2, 4)
        assert conformal_ratio(n, 0, 2, samples[0], samples[2]) == Fraction(
            4, n * (n + 2)
        )
        # plain convention
        assert conformal_ratio(
            n, 0, 1, samples[0], samples[1], convention="plain"
        ) == Fraction(1, n)
        assert conformal_ratio(
            n, 2, 1, samples[2], samples[1], convention="plain"
        ) == Fraction(n + 2, 2)
        assert conformal_ratio(
            n, 0, 2, samples[0], samples[2], convention="plain"
        ) == Fraction(2, n * (n + 2))


def test_energy_constant_rejects_bad_samples():
    rng = random.Random(31)
    with pytest.raises(ValueError):
        fiber_energy_constant(4, 2, [random_tensor(rng, 4, 2)])  # not trace-free
