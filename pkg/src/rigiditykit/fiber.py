"""Functions on the unit-sphere fiber: harmonic components and vertical ops.

A fiber element is a finite sum of restrictions pi_m^*(T_m) of trace-free
symmetric tensors; the T_m are the spherical-harmonic components, and every
operation (the vertical rotation field V, the twist J, eigenprojections,
the vertical Laplacian, exact L^2(S^{n-1}) pairings) acts on them directly.
All spectra are exact: V has eigenvalues i(m-2k) on degree-m components.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .geometry import GeometryKind, Matrix, structure_columns
from .scalar import Scalar
from .spheres import poly_add, poly_conj, poly_mul, poly_scale, poly_sphere_average
from .tensors import SymTensor, trace_decompose


class FiberElement:
    """sum_m pi_m^*(T_m) restricted to the unit sphere, T_m trace-free."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Mapping[int, SymTensor] | None = None):
        self.n = n
        self.components: dict[int, SymTensor] = {}
        if components:
            for m, t in components.items():
                if t.n != n or t.m != m:
                    raise ValueError("component shape mismatch")
                if t.m >= 2 and not t.trace().is_zero():
                    raise ValueError("fiber components must be trace-free")
                if not t.is_zero():
                    self.components[m] = t.copy()

    @staticmethod
    def from_tensor(s: SymTensor) -> "FiberElement":
        """Restriction of pi_m^* of a general symmetric tensor.

        The |v|^2 factors of the trace decomposition collapse on the sphere,
        so the components are exactly the decomposition's trace-free parts.
        """
        out = FiberElement(s.n)
        for k, u in enumerate(trace_decompose(s)):
            if not u.is_zero():
                cur = out.components.get(u.m)
                out.components[u.m] = u if cur is None else cur + u
        out._normalize()
        return out

    def _normalize(self) -> None:
        self.components = {m: t for m, t in self.components.items() if not t.is_zero()}

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "FiberElement") -> "FiberElement":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = FiberElement(self.n)
        out.components = {m: t.copy() for m, t in self.components.items()}
        for m, t in other.components.items():
            cur = out.components.get(m)
            out.components[m] = t.copy() if cur is None else cur + t
        out._normalize()
        return out

    def __sub__(self, other: "FiberElement") -> "FiberElement":
        return self + other.scale(-1)

    def scale(self, c) -> "FiberElement":
        out = FiberElement(self.n)
        cs = Scalar.of(c)
        if not cs.is_zero():
            out.components = {m: t.scale(cs) for m, t in self.components.items()}
        return out

    def conj(self) -> "FiberElement":
        out = FiberElement(self.n)
        out.components = {m: t.conj() for m, t in self.components.items()}
        return out

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberElement):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def component(self, m: int) -> SymTensor:
        return self.components.get(m, SymTensor(self.n, m)).copy()

    def degrees(self) -> list[int]:
        return sorted(self.components)

    # -- vertical operators ----------------------------------------------------

    def apply_v(self, structure: Matrix) -> "FiberElement":
        """Vertical rotation field of the structure: V(pi_m^* T) is the
        pullback of the one-slot J-twist summed over slots."""
        cols = structure_columns(structure)
        out = FiberElement(self.n)
        for m, t in self.components.items():
            if m == 0:
                continue
            tw = t.twist_sum(cols)
            if not tw.is_zero():
                out.components[m] = tw
        return out

    def apply_j(self, structure: Matrix) -> "FiberElement":
        """(J f)(v) = pullback through the twist of every slot."""
        cols = structure_columns(structure)
        out = FiberElement(self.n)
        for m, t in self.components.items():
            tj = t.compose_columns(cols)
            if not tj.is_zero():
                out.components[m] = tj
        return out

    def vertical_laplacian(self) -> "FiberElement":
        """Positive sphere Laplacian: m(n+m-2) on degree-m components."""
        out = FiberElement(self.n)
        for m, t in self.components.items():
            if m:
                out.components[m] = t.scale(m * (self.n + m - 2))
        return out

    # -- spectral calculus of V --------------------------------------------------

    def v_eigencomponent(self, structure: Matrix, lam: int) -> "FiberElement":
        """Projection onto the V-eigenspace of eigenvalue i*lam.

        Lagrange interpolation over the exact spectrum i(m-2k) per degree.
        """
        out = FiberElement(self.n)
        for m, t in self.components.items():
            part = _eigenproject_component(t, structure, m, lam)
            if not part.is_zero():
                out.components[m] = part
        return out

    def v_eigendecomposition(self, structure: Matrix) -> dict[int, "FiberElement"]:
        """lam -> projection, over all possible lam of the present degrees."""
        lams: set[int] = set()
        for m in self.components:
            lams.update(m - 2 * k for k in range(m + 1))
        out: dict[int, FiberElement] = {}
        for lam in sorted(lams):
            p = self.v_eigencomponent(structure, lam)
            if not p.is_zero():
                out[lam] = p
        return out

    # -- exact integration ----------------------------------------------------------

    def to_poly(self) -> dict[tuple[int, ...], Scalar]:
        poly: dict[tuple[int, ...], Scalar] = {}
        for t in self.components.values():
            poly = poly_add(poly, t.to_poly())
        return poly

    def sphere_pair(self, other: "FiberElement") -> Scalar:
        """L^2(S^{n-1}) hermitian pairing <self, other>, exact."""
        prod = poly_mul(self.to_poly(), poly_conj(other.to_poly()))
        return poly_sphere_average(self.n, prod)

    def sphere_norm_sq(self) -> Scalar:
        return self.sphere_pair(self)


def _eigenproject_component(t: SymTensor, structure: Matrix, m: int, lam: int) -> SymTensor:
    spectrum = [m - 2 * k for k in range(m + 1)]
    if lam not in spectrum:
        return SymTensor(t.n, m)
    cols = structure_columns(structure)
    out = t.copy()
    denom = Scalar(1)
    for mu in spectrum:
        if mu == lam:
            continue
        # (V - i mu) applied
        out = out.twist_sum(cols) - out.scale(Scalar(0, mu))
        denom = denom * Scalar(0, lam - mu)
    return out.scale(Scalar(1) / denom)


def fiber_triple_residuals(
    f: FiberElement, structure: Matrix
) -> tuple[FiberElement, FiberElement, FiberElement]:
    """Residuals of the spectral triple on the V-eigendecomposition:

    - completeness: f - sum_lam P_lam f
    - rotation:     V f - sum_lam (i lam) P_lam f
    - twist:        J f - sum_lam i^lam P_lam f
    """
    parts = f.v_eigendecomposition(structure)
    total = FiberElement(f.n)
    v_total = FiberElement(f.n)
    j_total = FiberElement(f.n)
    i_unit = Scalar(0, 1)
    for lam, part in parts.items():
        total = total + part
        v_total = v_total + part.scale(Scalar(0, lam))
        power = Scalar(1)
        k = lam % 4
        for _ in range(k):
            power = power * i_unit
        j_total = j_total + part.scale(power)
    return (
        f - total,
        f.apply_v(structure) - v_total,
        f.apply_j(structure) - j_total,
    )


def v_minimal_polynomial_residual(f: FiberElement, structure: Matrix) -> FiberElement:
    """prod_k (V - i(m-2k)) annihilates each degree-m component."""
    out = FiberElement(f.n)
    cols = structure_columns(structure)
    for m, t in f.components.items():
        cur = t
        for k in range(m + 1):
            mu = m - 2 * k
            cur = cur.twist_sum(cols) - cur.scale(Scalar(0, mu))
        if not cur.is_zero():
            out.components[m] = cur
    return out


def isotropic_witness(n: int, structure: Matrix, m: int, k: int) -> FiberElement:
    """Trace-free degree-m element with exact V-eigenvalue i(m-2k).

    Built from isotropic covectors w = e_1 + i J e_1 and the conjugate of a
    second one from a different structure block (needs n >= 4).
    """
    if n < 4:
        raise ValueError("witness construction needs n >= 4")
    if not 0 <= k <= m:
        raise ValueError("k out of range")

    def covector(base: int) -> SymTensor:
        jcol = [structure[r][base] for r in range(n)]
        data = {}
        for r in range(n):
            val = Scalar(1 if r == base else 0) + Scalar(0, 1) * jcol[r]
            if not val.is_zero():
                data[(r,)] = val
        return SymTensor(n, 1, data)

    w1 = covector(0)
    w2 = covector(2).conj()
    if m == 0:
        return FiberElement(n, {0: SymTensor(n, 0, {(): Scalar(1)})})
    t = None
    for _ in range(m - k):
        t = w1 if t is None else t.sym_mul(w1)
    for _ in range(k):
        t = w2 if t is None else t.sym_mul(w2)
    return FiberElement(n, {m: t})


def fiber_energy_constant(n: int, m: int, samples: Iterable[SymTensor]) -> Fraction:
    """Lambda_m with <T,T> = Lambda_m * avg_{S^{n-1}} (pi_m^* T)^2, measured.

    Raises if the measured ratio is not constant across the samples; the
    returned value uses the 1/m!-normalized tensor inner product.
    """
    ratio: Fraction | None = None
    for t in samples:
        if t.n != n or t.m != m:
            raise ValueError("sample shape mismatch")
        if t.m >= 2 and not t.trace().is_zero():
            raise ValueError("samples must be trace-free")
        if t.is_zero():
            continue
        f = FiberElement(n, {m: t})
        avg = f.sphere_pair(f)
        norm = t.herm_inner(t)
        if avg.is_zero():
            raise ValueError("degenerate sample")
        r = norm / avg
        if not r.is_real():
            raise ValueError("energy ratio must be real")
        if ratio is None:
            ratio = r.re
        elif ratio != r.re:
            raise ValueError("fiber energy ratio is not constant across samples")
    if ratio is None:
        raise ValueError("no nonzero samples")
    return ratio


def conformal_ratio(n: int, m_from: int, m_to: int, samples_from, samples_to, *,
                    convention: str = "normalized") -> Fraction:
    """Lambda_{m_from} / Lambda_{m_to} under either inner-product convention.

    convention "normalized" uses the 1/m!-weighted tensor inner product;
    "plain" uses the unnormalized full contraction (m! times larger).
    """
    lam_from = fiber_energy_constant(n, m_from, samples_from)
    lam_to = fiber_energy_constant(n, m_to, samples_to)
    if convention == "plain":
        lam_from *= factorial(m_from)
        lam_to *= factorial(m_to)
    elif convention != "normalized":
        raise ValueError("convention must be 'normalized' or 'plain'")
    return lam_from / lam_to


def vertical_spectrum(kind: GeometryKind, m: int) -> tuple[int, ...]:
    """The integers lam with i*lam in Spec(V) on degree-m fiber harmonics."""
    if kind.family not in ("complex", "quaternion"):
        raise ValueError("vertical spectrum needs a complex structure")
    return tuple(m - 2 * k for k in range(m + 1))
