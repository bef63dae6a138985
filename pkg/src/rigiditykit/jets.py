"""Exact jets of symmetric tensor fields at a model point.

A TensorJet holds the full derivative arrays nabla^j T for j = 0, 1, 2 at one
point of a curvature model: raws[j] maps an ordered derivative multi-index
(d_1, ..., d_j), d_1 outermost, to the symmetric tensor of values in the
tensor slots. Jets are generated lawfully: the symmetrized derivative parts
are free random data, and the antisymmetric parts are assembled once from
the curvature action (the exchange of nabla^2_{A,B} and nabla^2_{B,A} acts
on each tensor slot through R(A, B)), so every identity that holds for jets
of genuine tensor fields holds for these.

JetFunction lifts jets to functions on the sphere bundle fiber: a sum of
pullbacks pi_m^*(T_m) with trace-free T_m, on which the generators X
(geodesic flow), V (vertical rotation), H = [X, V], their raising/lowering
graded parts, and the ladder combinations eta = (X_pm + i H_pm)/2 act
exactly. The octonionic family stores symmetrized derivatives only and
supports the operations that read symmetric or diagonal derivative patterns;
that restriction is enforced, not silently ignored.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .geometry import (
    GeometryKind,
    Matrix,
    UnsupportedGeometryError,
    curvature_apply,
    structure_columns,
    structures_of,
)
from .linalg import nullspace
from .scalar import Scalar
from .tensors import SymTensor, key_list, metric, random_tensor, trace_decompose

DTuple = tuple[int, ...]


@lru_cache(maxsize=None)
def curvature_matrix(kind: GeometryKind, a: int, b: int) -> tuple[tuple[Scalar, ...], ...]:
    """Matrix of C -> R(e_a, e_b) C in the standard basis."""
    n = kind.n
    cols = []
    for c in range(n):
        e_c = tuple(Scalar(1 if i == c else 0) for i in range(n))
        e_a = tuple(Scalar(1 if i == a else 0) for i in range(n))
        e_b = tuple(Scalar(1 if i == b else 0) for i in range(n))
        cols.append(curvature_apply(kind, e_a, e_b, e_c))
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


@lru_cache(maxsize=None)
def _curvature_columns(kind: GeometryKind, a: int, b: int):
    return tuple(
        tuple(col) for col in structure_columns(curvature_matrix(kind, a, b))
    )


class TensorJet:
    """Degree-m symmetric tensor field jet of order <= 2 at the model point."""

    __slots__ = ("kind", "m", "order", "raws", "symmetric_only")

    def __init__(
        self,
        kind: GeometryKind,
        m: int,
        order: int,
        raws: Sequence[dict[DTuple, SymTensor]],
        symmetric_only: bool = False,
    ):
        if order < 0 or order > 2:
            raise ValueError("jets support orders 0..2")
        if len(raws) != order + 1:
            raise ValueError("raws must have order+1 levels")
        self.kind = kind
        self.m = m
        self.order = order
        self.raws = [dict(level) for level in raws]
        self.symmetric_only = symmetric_only

    # -- access -------------------------------------------------------------

    def raw(self, dtuple: Sequence[int]) -> SymTensor:
        d = tuple(dtuple)
        level = self.raws[len(d)]
        t = level.get(d)
        if t is None:
            return SymTensor(self.kind.n, self.m)
        return t

    def value(self) -> SymTensor:
        return self.raw(())

    def is_zero(self) -> bool:
        return all(t.is_zero() for level in self.raws for t in level.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorJet):
            return NotImplemented
        if self.kind != other.kind or self.m != other.m or self.order != other.order:
            return False
        return (self - other).is_zero()

    def copy(self) -> "TensorJet":
        return TensorJet(
            self.kind,
            self.m,
            self.order,
            [dict(level) for level in self.raws],
            self.symmetric_only,
        )

    # -- linear structure -----------------------------------------------------

    def _binary(self, other: "TensorJet", op) -> "TensorJet":
        if self.kind != other.kind or self.m != other.m:
            raise ValueError("jet shape mismatch")
        order = min(self.order, other.order)
        out: list[dict[DTuple, SymTensor]] = []
        for j in range(order + 1):
            level: dict[DTuple, SymTensor] = {}
            keys = set(self.raws[j]) | set(other.raws[j])
            for d in keys:
                t = op(self.raw(d), other.raw(d))
                if not t.is_zero():
                    level[d] = t
            out.append(level)
        return TensorJet(
            self.kind, self.m, order, out, self.symmetric_only or other.symmetric_only
        )

    def __add__(self, other: "TensorJet") -> "TensorJet":
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: "TensorJet") -> "TensorJet":
        return self._binary(other, lambda a, b: a - b)

    def scale(self, c) -> "TensorJet":
        return self.map_tensors(lambda t: t.scale(c))

    def map_tensors(self, fn: Callable[[SymTensor], SymTensor], new_m: int | None = None) -> "TensorJet":
        """Apply a pointwise (parallel) tensor-slot operation to every raw."""
        out: list[dict[DTuple, SymTensor]] = []
        m = self.m if new_m is None else new_m
        for level in self.raws:
            new_level: dict[DTuple, SymTensor] = {}
            for d, t in level.items():
                ft = fn(t)
                if not ft.is_zero():
                    new_level[d] = ft
            out.append(new_level)
        return TensorJet(self.kind, m, self.order, out, self.symmetric_only)

    def truncate(self, order: int) -> "TensorJet":
        if order > self.order:
            raise ValueError("cannot extend a jet")
        return TensorJet(
            self.kind, self.m, order, self.raws[: order + 1], self.symmetric_only
        )

    def conj(self) -> "TensorJet":
        return self.map_tensors(lambda t: t.conj())


# -- generation -----------------------------------------------------------------


def random_field_jet(
    kind: GeometryKind,
    rng: random.Random,
    m: int,
    order: int = 2,
    *,
    complex_values: bool = False,
) -> TensorJet:
    """Lawful random jet: free symmetrized data, curvature-forced exchanges."""
    n = kind.n
    raws: list[dict[DTuple, SymTensor]] = [
        {(): random_tensor(rng, n, m, complex_values=complex_values)}
    ]
    if order >= 1:
        raws.append(
            {(d,): random_tensor(rng, n, m, complex_values=complex_values) for d in range(n)}
        )
    if order >= 2:
        sym: dict[DTuple, SymTensor] = {}
        for a in range(n):
            for b in range(a, n):
                sym[(a, b)] = random_tensor(rng, n, m, complex_values=complex_values)
        level: dict[DTuple, SymTensor] = {}
        for a in range(n):
            for b in range(n):
                base = sym[tuple(sorted((a, b)))]
                if a == b or kind.family == "octonion":
                    level[(a, b)] = base
                else:
                    corr = raws[0][()].twist_sum(_curvature_columns(kind, a, b))
                    level[(a, b)] = base + corr.scale(Fraction(1, 2))
        raws.append(level)
    return TensorJet(kind, m, order, raws, symmetric_only=kind.family == "octonion")


def constant_jet(kind: GeometryKind, t: SymTensor, order: int = 2) -> TensorJet:
    """Jet of a parallel tensor field: all derivative raws vanish."""
    raws: list[dict[DTuple, SymTensor]] = [{(): t.copy()}]
    for _ in range(order):
        raws.append({})
    return TensorJet(kind, t.m, order, raws, symmetric_only=kind.family == "octonion")


def zero_jet(kind: GeometryKind, m: int, order: int) -> TensorJet:
    raws: list[dict[DTuple, SymTensor]] = [{} for _ in range(order + 1)]
    return TensorJet(kind, m, order, raws)


def jet_exchange_residual(jet: TensorJet) -> SymTensor:
    """Worst-case consistency check of the stored order-2 exchanges.

    Returns the accumulated residual of nabla^2_{a,b} - nabla^2_{b,a} minus
    the curvature action on the tensor slots, over all pairs (a, b).
    """
    if jet.order < 2:
        raise ValueError("needs an order-2 jet")
    if jet.symmetric_only:
        raise UnsupportedGeometryError("octonionic jets store symmetric data only")
    n = jet.kind.n
    total = SymTensor(n, jet.m)
    for a in range(n):
        for b in range(a + 1, n):
            diff = jet.raw((a, b)) - jet.raw((b, a))
            expected = jet.raw(()).twist_sum(_curvature_columns(jet.kind, a, b))
            total = total + (diff - expected)
    return total


# -- first-order operators on jets ---------------------------------------------


def nabla_dir(jet: TensorJet, i: int) -> TensorJet:
    """Jet of nabla_{e_i} T (innermost derivative slot)."""
    if jet.order < 1:
        raise ValueError("jet order too low for a derivative")
    out: list[dict[DTuple, SymTensor]] = []
    for j in range(jet.order):
        level: dict[DTuple, SymTensor] = {}
        for d in _dtuples(jet.kind.n, j):
            t = jet.raw(d + (i,))
            if not t.is_zero():
                level[d] = t
        out.append(level)
    return TensorJet(jet.kind, jet.m, jet.order - 1, out, jet.symmetric_only)


@lru_cache(maxsize=None)
def _dtuples(n: int, j: int) -> tuple[DTuple, ...]:
    return tuple(itertools.product(range(n), repeat=j))


def _sym_push(
    jet: TensorJet, j: int, d: DTuple, cols=None
) -> SymTensor:
    """Sym over the m+1 tensor slots of (twisted) nabla T at derivative d.

    With cols None this is the plain symmetrized derivative; otherwise the
    innermost derivative direction is twisted through the sparse matrix.
    """
    n = jet.kind.n
    m = jet.m
    out = SymTensor(n, m + 1)
    norm = Fraction(1, m + 1)
    for key in key_list(n, m + 1):
        total = Scalar(0)
        for v in set(key):
            base = list(key)
            base.remove(v)
            count = Scalar(key.count(v) * norm)
            rest = tuple(base)
            if cols is None:
                t = jet.raw(d + (v,))
                val = t.get(rest)
                if not val.is_zero():
                    total = total + val * count
            else:
                for w, cf in cols[v]:
                    t = jet.raw(d + (w,))
                    val = t.get(rest)
                    if not val.is_zero():
                        total = total + val * cf * count
        if not total.is_zero():
            out.set_entry(key, total)
    return out


def d_sym(jet: TensorJet) -> TensorJet:
    """Jet of the symmetrized derivative D T = Sym(nabla T)."""
    if jet.order < 1:
        raise ValueError("jet order too low")
    out: list[dict[DTuple, SymTensor]] = []
    for j in range(jet.order):
        level: dict[DTuple, SymTensor] = {}
        for d in _dtuples(jet.kind.n, j):
            t = _sym_push(jet, j, d)
            if not t.is_zero():
                level[d] = t
        out.append(level)
    return TensorJet(jet.kind, jet.m + 1, jet.order - 1, out, jet.symmetric_only)


def d_sym_twisted(jet: TensorJet, structure: Matrix) -> TensorJet:
    """Jet of Sym(nabla T (J., ..., .)): derivative direction twisted."""
    if jet.order < 1:
        raise ValueError("jet order too low")
    cols = structure_columns(structure)
    out: list[dict[DTuple, SymTensor]] = []
    for j in range(jet.order):
        level: dict[DTuple, SymTensor] = {}
        for d in _dtuples(jet.kind.n, j):
            t = _sym_push(jet, j, d, cols)
            if not t.is_zero():
                level[d] = t
        out.append(level)
    return TensorJet(jet.kind, jet.m + 1, jet.order - 1, out, jet.symmetric_only)


def d_star(jet: TensorJet) -> TensorJet:
    """Jet of the divergence D* T = -tr(nabla T)."""
    if jet.order < 1:
        raise ValueError("jet order too low")
    if jet.m < 1:
        raise ValueError("divergence needs tensor degree >= 1")
    n = jet.kind.n
    out: list[dict[DTuple, SymTensor]] = []
    for j in range(jet.order):
        level: dict[DTuple, SymTensor] = {}
        for d in _dtuples(n, j):
            acc = SymTensor(n, jet.m - 1)
            for kp in key_list(n, jet.m - 1):
                total = Scalar(0)
                for i in range(n):
                    total = total + jet.raw(d + (i,)).get(kp + (i,))
                if not total.is_zero():
                    acc.set_entry(kp, -total)
            if not acc.is_zero():
                level[d] = acc
        out.append(level)
    return TensorJet(jet.kind, jet.m - 1, jet.order - 1, out, jet.symmetric_only)


def rough_laplacian(jet: TensorJet) -> TensorJet:
    """Jet (order-2 drop) of nabla* nabla T = -sum_i nabla^2_{e_i, e_i} T."""
    if jet.order < 2:
        raise ValueError("rough laplacian needs an order-2 jet")
    n = jet.kind.n
    out: list[dict[DTuple, SymTensor]] = []
    for j in range(jet.order - 1):
        level: dict[DTuple, SymTensor] = {}
        for d in _dtuples(n, j):
            acc = SymTensor(n, jet.m)
            for i in range(n):
                acc = acc + jet.raw(d + (i, i))
            acc = -acc
            if not acc.is_zero():
                level[d] = acc
        out.append(level)
    return TensorJet(jet.kind, jet.m, jet.order - 2, out, jet.symmetric_only)


def compose_structure(jet: TensorJet, structure: Matrix) -> TensorJet:
    """Jet of T(J., ..., J.): parallel slotwise twist."""
    cols = structure_columns(structure)
    return jet.map_tensors(lambda t: t.compose_columns(cols))


def l_raise_jet(jet: TensorJet) -> TensorJet:
    g = metric(jet.kind.n)
    return jet.map_tensors(lambda t: t.sym_mul(g), new_m=jet.m + 2)


def trace_jet(jet: TensorJet) -> TensorJet:
    return jet.map_tensors(lambda t: t.trace(), new_m=jet.m - 2)


# -- fiber functions built from jets ----------------------------------------------


class JetFunction:
    """Finite sum of pullbacks pi_m^*(T_m) with trace-free tensor jets T_m."""

    __slots__ = ("kind", "order", "components")

    def __init__(self, kind: GeometryKind, order: int, components: dict[int, TensorJet]):
        self.kind = kind
        self.order = order
        self.components: dict[int, TensorJet] = {}
        for m, jet in components.items():
            if jet.m != m or jet.kind != kind:
                raise ValueError("component shape mismatch")
            if jet.order != order:
                raise ValueError("component order mismatch")
            if not jet.is_zero():
                self.components[m] = jet

    @staticmethod
    def from_jet(jet: TensorJet) -> "JetFunction":
        """pi_m^* of a general symmetric jet, split into harmonic components.

        The trace decomposition is a parallel slotwise operation, so it is
        applied to every raw; |v|^2 factors collapse on the fiber sphere.
        """
        parts: dict[int, TensorJet] = {}
        for k in range(jet.m // 2 + 1):
            deg = jet.m - 2 * k

            def pick(t: SymTensor, k=k, deg=deg) -> SymTensor:
                ps = trace_decompose(t)
                return ps[k] if k < len(ps) else SymTensor(t.n, deg)

            part = jet.map_tensors(pick, new_m=deg)
            if not part.is_zero():
                parts[deg] = part
        return JetFunction(jet.kind, jet.order, parts)

    def component(self, m: int) -> TensorJet:
        jet = self.components.get(m)
        if jet is None:
            return zero_jet(self.kind, m, self.order)
        return jet.copy()

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetFunction):
            return NotImplemented
        return (self - other).is_zero()

    def _merge(self, other: "JetFunction", sign: int) -> "JetFunction":
        if self.kind != other.kind:
            raise ValueError("kind mismatch")
        order = min(self.order, other.order)
        out: dict[int, TensorJet] = {}
        for m in set(self.components) | set(other.components):
            a = self.components.get(m)
            b = other.components.get(m)
            if a is not None:
                a = a.truncate(order)
            if b is not None:
                b = b.truncate(order)
            if a is None:
                t = b if sign > 0 else b.scale(-1)
            elif b is None:
                t = a
            else:
                t = a + b if sign > 0 else a - b
            if not t.is_zero():
                out[m] = t
        return JetFunction(self.kind, order, out)

    def __add__(self, other: "JetFunction") -> "JetFunction":
        return self._merge(other, +1)

    def __sub__(self, other: "JetFunction") -> "JetFunction":
        return self._merge(other, -1)

    def scale(self, c) -> "JetFunction":
        return JetFunction(
            self.kind,
            self.order,
            {m: jet.scale(c) for m, jet in self.components.items()},
        )

    def conj(self) -> "JetFunction":
        return JetFunction(
            self.kind, self.order, {m: jet.conj() for m, jet in self.components.items()}
        )

    def truncate(self, order: int) -> "JetFunction":
        return JetFunction(
            self.kind,
            order,
            {m: jet.truncate(order) for m, jet in self.components.items()},
        )

    # -- generators ------------------------------------------------------------

    def geodesic_x(self) -> "JetFunction":
        """X u: the symmetrized-derivative pullback, harmonically split."""
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            split = JetFunction.from_jet(d_sym(jet))
            for deg, part in split.components.items():
                if deg not in (m + 1, m - 1):
                    raise AssertionError("trace-free derivative split out of range")
                cur = out.get(deg)
                out[deg] = part if cur is None else cur + part
        return JetFunction(self.kind, self.order - 1, out)

    def x_graded(self, direction: int) -> "JetFunction":
        """X_+ (direction +1) or X_- (direction -1)."""
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            split = JetFunction.from_jet(d_sym(jet))
            deg = m + direction
            part = split.components.get(deg)
            if part is not None:
                out[deg] = part if deg not in out else out[deg] + part
        return JetFunction(self.kind, self.order - 1, out)

    def _structure(self) -> Matrix:
        js = structures_of(self.kind)
        if len(js) != 1:
            raise UnsupportedGeometryError(
                "vertical ladder operators need a single complex structure"
            )
        return js[0]

    def vertical_v(self) -> "JetFunction":
        """V u: vertical rotation generated by the complex structure."""
        cols = structure_columns(self._structure())
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            if m == 0:
                continue
            tw = jet.map_tensors(lambda t: t.twist_sum(cols))
            if not tw.is_zero():
                out[m] = tw
        return JetFunction(self.kind, self.order, out)

    def twist_j(self) -> "JetFunction":
        """J u: every tensor slot twisted."""
        cols = structure_columns(self._structure())
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            tj = jet.map_tensors(lambda t: t.compose_columns(cols))
            if not tj.is_zero():
                out[m] = tj
        return JetFunction(self.kind, self.order, out)

    def twist_j_inverse(self) -> "JetFunction":
        """J^{-1} u = (-1)^m J u on degree-m components."""
        cols = structure_columns(self._structure())
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            tj = jet.map_tensors(lambda t: t.compose_columns(cols).scale((-1) ** m))
            if not tj.is_zero():
                out[m] = tj
        return JetFunction(self.kind, self.order, out)

    def horizontal_h(self) -> "JetFunction":
        """H u = [X, V] u: derivative along the horizontal lift of -Jv.

        Realized on pullbacks as the twisted symmetrized derivative with an
        overall minus sign, then harmonically split like X.
        """
        structure = self._structure()
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            split = JetFunction.from_jet(d_sym_twisted(jet, structure).scale(-1))
            for deg, part in split.components.items():
                cur = out.get(deg)
                out[deg] = part if cur is None else cur + part
        return JetFunction(self.kind, self.order - 1, out)

    def h_graded(self, direction: int) -> "JetFunction":
        structure = self._structure()
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            split = JetFunction.from_jet(d_sym_twisted(jet, structure).scale(-1))
            deg = m + direction
            part = split.components.get(deg)
            if part is not None:
                out[deg] = part if deg not in out else out[deg] + part
        return JetFunction(self.kind, self.order - 1, out)

    def eta(self, horizontal_sign: int, vertical_sign: int) -> "JetFunction":
        """eta_{e}^{d} = (X_e + d i H_e) / 2 with e, d in {+1, -1}."""
        xe = self.x_graded(horizontal_sign)
        he = self.h_graded(horizontal_sign)
        return (xe + he.scale(Scalar(0, vertical_sign))).scale(Fraction(1, 2))

    def nabla_direction(self, i: int) -> "JetFunction":
        """Pullback of nabla_{e_i} applied componentwise (degree preserved)."""
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            dj = nabla_dir(jet, i)
            if not dj.is_zero():
                out[m] = dj
        return JetFunction(self.kind, self.order - 1, out)

    # -- V-spectral calculus ------------------------------------------------------

    def v_eigencomponent(self, lam: int) -> "JetFunction":
        structure = self._structure()
        cols = structure_columns(structure)
        out: dict[int, TensorJet] = {}
        for m, jet in self.components.items():
            spectrum = [m - 2 * k for k in range(m + 1)]
            if lam not in spectrum:
                continue
            cur = jet
            denom = Scalar(1)
            for mu in spectrum:
                if mu == lam:
                    continue
                cur = cur.map_tensors(lambda t: t.twist_sum(cols)) - cur.scale(
                    Scalar(0, mu)
                )
                denom = denom * Scalar(0, lam - mu)
            cur = cur.scale(Scalar(1) / denom)
            if not cur.is_zero():
                out[m] = cur
        return JetFunction(self.kind, self.order, out)

    # -- evaluation --------------------------------------------------------------

    def fiber_value(self):
        """Order-0 restriction as a FiberElement (for exact pairings)."""
        from .fiber import FiberElement

        out = FiberElement(self.kind.n)
        for m, jet in self.components.items():
            t = jet.value()
            if not t.is_zero():
                cur = out.components.get(m)
                out.components[m] = t if cur is None else cur + t
        out._normalize()
        return out


def pullback(jet: TensorJet) -> JetFunction:
    return JetFunction.from_jet(jet)


# -- identity residuals -----------------------------------------------------------


def commutator_xv_residual(u: JetFunction) -> JetFunction:
    """[X, V] u - H u."""
    xv = u.vertical_v().geodesic_x() - u.geodesic_x().vertical_v()
    return xv - u.horizontal_h()


def commutator_vh_residual(u: JetFunction) -> JetFunction:
    """[V, H] u - X u."""
    vh = u.horizontal_h().vertical_v() - u.vertical_v().horizontal_h()
    return vh - u.geodesic_x()


def commutator_hx_residual(u: JetFunction) -> JetFunction:
    """[H, X] u + 4 V u (the bracket closes on -4V in curvature -4..-1)."""
    hx = u.geodesic_x().horizontal_h() - u.horizontal_h().geodesic_x()
    return hx + u.vertical_v().scale(4).truncate(u.order - 2)


def graded_commutator_residuals(u: JetFunction) -> list[JetFunction]:
    """The graded pieces: [H_+, X_+] = 0, [X_-, H_-] = 0, and
    H_+X_- + H_-X_+ - X_+H_- - X_-H_+ = -4V."""
    r1 = u.x_graded(+1).h_graded(+1) - u.h_graded(+1).x_graded(+1)
    r2 = u.h_graded(-1).x_graded(-1) - u.x_graded(-1).h_graded(-1)
    mixed = (
        u.x_graded(-1).h_graded(+1)
        + u.x_graded(+1).h_graded(-1)
        - u.h_graded(-1).x_graded(+1)
        - u.h_graded(+1).x_graded(-1)
    )
    r3 = mixed + u.vertical_v().scale(4).truncate(u.order - 2)
    return [r1, r2, r3]


def ladder_commutator_residuals(u: JetFunction) -> list[JetFunction]:
    """[eta_+^+, eta_+^-] = 0 and [eta_-^+, eta_-^-] = 0."""
    out = []
    for e in (+1, -1):
        a = lambda w, e=e: w.eta(e, +1)
        b = lambda w, e=e: w.eta(e, -1)
        out.append(a(b(u)) - b(a(u)))
    return out


def pestov_rearrangement_residuals(u: JetFunction) -> list[JetFunction]:
    """4(-eta_-^- eta_+^+ + eta_+^+ eta_-^-) u against its two expansions:

    - directly: -X_-X_+ + X_+X_- - H_-H_+ + H_+H_- - i(X_-H_+ + X_+H_- -
      H_-X_+ - H_+X_-)
    - after the graded bracket relations: ... - 4iV
    """
    lhs = (u.eta(+1, +1).eta(-1, -1) - u.eta(-1, -1).eta(+1, +1)).scale(4)

    def op(w, first, second):
        return getattr(getattr(w, first[0])(first[1]), second[0])(second[1])

    direct = (
        op(u, ("x_graded", +1), ("x_graded", -1)).scale(-1)
        + op(u, ("x_graded", -1), ("x_graded", +1))
        - op(u, ("h_graded", +1), ("h_graded", -1))
        + op(u, ("h_graded", -1), ("h_graded", +1))
        - (
            op(u, ("h_graded", +1), ("x_graded", -1))
            + op(u, ("h_graded", -1), ("x_graded", +1))
            - op(u, ("x_graded", +1), ("h_graded", -1))
            - op(u, ("x_graded", -1), ("h_graded", +1))
        ).scale(Scalar(0, 1))
    )
    bracket = (
        op(u, ("x_graded", +1), ("x_graded", -1)).scale(-1)
        + op(u, ("x_graded", -1), ("x_graded", +1))
        - op(u, ("h_graded", +1), ("h_graded", -1))
        + op(u, ("h_graded", -1), ("h_graded", +1))
        - u.vertical_v().scale(Scalar(0, 4)).truncate(u.order - 2)
    )
    return [lhs - direct, lhs - bracket]


def h_dual_realization_residual(u: JetFunction) -> JetFunction:
    """H u + J X J^{-1} u (the twisted conjugate realizes -H)."""
    return u.horizontal_h() + u.twist_j_inverse().geodesic_x().twist_j()


def ladder_mapping_residuals(u: JetFunction) -> list[JetFunction]:
    """eta_e^d maps V-eigenvalue i*lam to i*(lam + d) in degree m + e."""
    out = []
    for m, jet in u.components.items():
        single = JetFunction(u.kind, u.order, {m: jet})
        for lam in range(-m, m + 1, 2):
            part = single.v_eigencomponent(lam)
            if part.is_zero():
                continue
            for e in (+1, -1):
                for d in (+1, -1):
                    img = part.eta(e, d)
                    out.append(img - img.v_eigencomponent(lam + d))
    return out


def divergence_grading_residual(s_jet: TensorJet) -> JetFunction:
    """pi_1^*(D* S_0) + ((n+2)/2) X_- pi_2^* S_0 for trace-free S_0."""
    if s_jet.m != 2:
        raise ValueError("expects a degree-2 jet")
    n = s_jet.kind.n
    f = pullback(s_jet)
    s0 = f.component(2)
    div = JetFunction.from_jet(d_star(s0))
    xminus = JetFunction(s_jet.kind, s_jet.order, {2: s0}).x_graded(-1)
    return div + xminus.scale(Fraction(n + 2, 2))


def delta_h_residual(s_jet: TensorJet) -> JetFunction:
    """Route A minus route B for the total horizontal Laplacian.

    A: -sum_j of the per-direction second derivative pullbacks.
    B: pullback of nabla* nabla S.
    Octonionic jets only read diagonal derivative patterns here, which the
    symmetric-only storage supports lawfully.
    """
    u = pullback(s_jet)
    n = s_jet.kind.n
    route_a: JetFunction | None = None
    for j in range(n):
        term = u.nabla_direction(j).nabla_direction(j)
        route_a = term if route_a is None else route_a + term
    route_a = route_a.scale(-1)
    route_b = pullback(rough_laplacian(s_jet))
    return route_a - route_b


def solenoidal_jet_samples(
    kind: GeometryKind,
    rng: random.Random,
    count: int,
    *,
    order: int = 2,
    extra_rows: Callable[[TensorJet], list[Scalar]] | None = None,
) -> list[TensorJet]:
    """Random degree-2 jets with D* S = 0 to jet order (plus optional linear
    conditions), sampled exactly from the nullspace of the constraints.

    The generation map is linear in the free data (value, first derivatives,
    symmetrized second derivatives), so constrained jets form a linear family
    and random rational combinations of a nullspace basis are lawful samples.
    """
    n = kind.n
    keys2 = key_list(n, 2)
    basis_jets: list[TensorJet] = []

    def build(fill: Callable[[str, tuple], Scalar]) -> TensorJet:
        raws: list[dict[DTuple, SymTensor]] = [{}, {}, {}]
        t0 = SymTensor(n, 2, {k: fill("t0", k) for k in keys2})
        raws[0][()] = t0
        for d in range(n):
            raws[1][(d,)] = SymTensor(n, 2, {k: fill("t1", (d, k)) for k in keys2})
        sym: dict[DTuple, SymTensor] = {}
        for a in range(n):
            for b in range(a, n):
                sym[(a, b)] = SymTensor(
                    n, 2, {k: fill("t2", (a, b, k)) for k in keys2}
                )
        for a in range(n):
            for b in range(n):
                base = sym[tuple(sorted((a, b)))]
                if a == b or kind.family == "octonion":
                    raws[2][(a, b)] = base
                else:
                    corr = raws[0][()].twist_sum(_curvature_columns(kind, a, b))
                    raws[2][(a, b)] = base + corr.scale(Fraction(1, 2))
        return TensorJet(kind, 2, order, raws, symmetric_only=kind.family == "octonion")

    slots: list[tuple[str, tuple]] = []
    slots.extend(("t0", k) for k in keys2)
    for d in range(n):
        slots.extend(("t1", (d, k)) for k in keys2)
    for a in range(n):
        for b in range(a, n):
            slots.extend(("t2", (a, b, k)) for k in keys2)

    for idx in range(len(slots)):
        tag, payload = slots[idx]

        def fill(t, p, tag=tag, payload=payload):
            return Scalar(1) if (t, p) == (tag, payload) else Scalar(0)

        basis_jets.append(build(fill))

    rows: list[list[Scalar]] = []
    row_blocks: list[list[list[Scalar]]] = []
    for jet in basis_jets:
        div = d_star(jet)
        col: list[Scalar] = []
        for j in range(div.order + 1):
            for d in _dtuples(n, j):
                t = div.raw(d)
                for k in key_list(n, 1):
                    col.append(t.get(k))
        if extra_rows is not None:
            col.extend(extra_rows(jet))
        row_blocks.append([col])
    ncols = len(basis_jets)
    nrows = len(row_blocks[0][0])
    rows = [[row_blocks[c][0][r] for c in range(ncols)] for r in range(nrows)]
    basis = nullspace(rows)
    if not basis:
        raise ValueError("no solenoidal jets in the constrained family")

    samples: list[TensorJet] = []
    for _ in range(count):
        coeffs = [Scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 2))) for _ in basis]
        combo: dict[str, dict[tuple, Scalar]] = {"t0": {}, "t1": {}, "t2": {}}
        total = [Scalar(0)] * ncols
        for c, vec in zip(coeffs, basis):
            for i, entry in enumerate(vec):
                total[i] = total[i] + c * entry
        for (tag, payload), val in zip(slots, total):
            combo[tag][payload] = val

        def fill(t, p, combo=combo):
            return combo[t].get(p, Scalar(0))

        samples.append(build(fill))
    return samples


def ricci_rearrangement_residual(
    s_jet: TensorJet, v: Sequence[Scalar], y: Sequence[Scalar], lam_sq: int
) -> Scalar:
    """nabla^2_{Y,v}S(v,Y) - nabla^2_{v,Y}S(v,Y) - lam^2 (S(Y,Y) - |Y|^2 S(v,v)).

    Y must be a Jacobi eigenvector at unit v with eigenvalue lam_sq (any
    length). For the matrix families this reads the stored exchange parts;
    the octonionic family stores symmetrized derivatives, where the exchange
    is reconstructed from the radial contractions, so the check validates
    the contraction arithmetic rather than stored data.
    """
    from .geometry import dot

    n = s_jet.kind.n
    sv = s_jet.value()

    def second(a_vec, b_vec):
        total = Scalar(0)
        for a in range(n):
            ca = Scalar.of(a_vec[a])
            if ca.is_zero():
                continue
            for b in range(n):
                cb = Scalar.of(b_vec[b])
                if cb.is_zero():
                    continue
                t = s_jet.raw((a, b))
                val = t.contract_one(v).contract_one(y).get(())
                total = total + ca * cb * val
        return total

    lhs = second(y, v) - second(v, y)
    if s_jet.symmetric_only:
        # symmetrized storage: the stored exchange is zero; substitute the
        # curvature value R(Y,v)v = lam^2 Y, R(Y,v)Y = -lam^2 |Y|^2 v
        from .geometry import curvature_contract

        ryv_v = tuple(Scalar(lam_sq) * Scalar.of(c) for c in y)
        yy = dot(y, y)
        ryv_y = tuple(Scalar(-lam_sq) * yy * Scalar.of(c) for c in v)
        lhs = lhs + sv.contract_one(ryv_v).contract_one(y).get(()) + sv.contract_one(
            v
        ).contract_one(ryv_y).get(())
        # consistency of the claimed eigendata with the model
        assert curvature_contract(s_jet.kind, y, v) == tuple(
            Scalar(lam_sq) * Scalar.of(c) for c in y
        )
    syy = sv.contract_one(y).contract_one(y).get(())
    svv = sv.contract_one(v).contract_one(v).get(())
    yy = dot(y, y)
    rhs = Scalar(lam_sq) * (syy - yy * svv)
    return lhs - rhs
