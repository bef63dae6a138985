"""Symmetric tensors over Gaussian rationals.

A degree-m symmetric tensor on R^n is stored sparsely as a map from sorted
index tuples to Scalar values. All normalizations live here and are the
single source of truth for the rest of the engine:

- Sym is the average over permutations (idempotent on symmetric tensors).
- sym_mul(A, B) = Sym(A tensor B).
- trace sums the two extra slots over an orthonormal basis, i ranging over
  all n directions.
- inner(A, B) averages the full contraction over all m-tuples with weight
  1/m!, so inner(g0, g0) = n/2.
- l_raise(T) = sym_mul(T, g0) and trace_decompose inverts the resulting
  filtration exactly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .linalg import invert, mat_vec
from .scalar import Scalar

Key = tuple[int, ...]


@lru_cache(maxsize=None)
def key_list(n: int, m: int) -> tuple[Key, ...]:
    """Canonical ordered basis of sorted index tuples."""
    return tuple(itertools.combinations_with_replacement(range(n), m))


@lru_cache(maxsize=None)
def orbit_size(key: Key) -> int:
    """Number of distinct orderings of a sorted multi-index."""
    total = factorial(len(key))
    for v in set(key):
        total //= factorial(key.count(v))
    return total


def _counts(key: Key) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in key:
        out[v] = out.get(v, 0) + 1
    return out


class SymTensor:
    """Sparse symmetric tensor with exact Gaussian-rational entries."""

    __slots__ = ("n", "m", "data")

    def __init__(self, n: int, m: int, data: dict[Key, Scalar] | None = None):
        self.n = n
        self.m = m
        self.data: dict[Key, Scalar] = {}
        if data:
            for k, v in data.items():
                sv = Scalar.of(v)
                if not sv.is_zero():
                    self.data[tuple(sorted(k))] = sv

    # -- access ----------------------------------------------------------

    def get(self, key: Iterable[int]) -> Scalar:
        return self.data.get(tuple(sorted(key)), Scalar(0))

    def set_entry(self, key: Iterable[int], value: Scalar) -> None:
        k = tuple(sorted(key))
        v = Scalar.of(value)
        if v.is_zero():
            self.data.pop(k, None)
        else:
            self.data[k] = v

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.data == other.data

    def __hash__(self):
        raise TypeError("SymTensor is mutable; not hashable")

    def copy(self) -> "SymTensor":
        return SymTensor(self.n, self.m, dict(self.data))

    def __repr__(self) -> str:
        entries = ", ".join(f"{k}: {v}" for k, v in sorted(self.data.items())[:6])
        more = "..." if len(self.data) > 6 else ""
        return f"SymTensor(n={self.n}, m={self.m}, {{{entries}{more}}})"

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check_shape(other)
        data = dict(self.data)
        for k, v in other.data.items():
            s = data.get(k, Scalar(0)) + v
            if s.is_zero():
                data.pop(k, None)
            else:
                data[k] = s
        out = SymTensor(self.n, self.m)
        out.data = data
        return out

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + (-other)

    def __neg__(self) -> "SymTensor":
        out = SymTensor(self.n, self.m)
        out.data = {k: -v for k, v in self.data.items()}
        return out

    def scale(self, c) -> "SymTensor":
        cs = Scalar.of(c)
        out = SymTensor(self.n, self.m)
        if not cs.is_zero():
            out.data = {k: cs * v for k, v in self.data.items()}
        return out

    def conj(self) -> "SymTensor":
        out = SymTensor(self.n, self.m)
        out.data = {k: v.conj() for k, v in self.data.items()}
        return out

    def map_values(self, fn: Callable[[Scalar], Scalar]) -> "SymTensor":
        out = SymTensor(self.n, self.m)
        for k, v in self.data.items():
            w = fn(v)
            if not w.is_zero():
                out.data[k] = w
        return out

    def _check_shape(self, other: "SymTensor") -> None:
        if self.n != other.n or self.m != other.m:
            raise ValueError(
                f"shape mismatch: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )

    # -- multiplication and contraction -------------------------------------

    def sym_mul(self, other: "SymTensor") -> "SymTensor":
        """Sym(self tensor other), with Sym the permutation average."""
        if self.n != other.n:
            raise ValueError("dimension mismatch in sym_mul")
        ma, mb = self.m, other.m
        m = ma + mb
        norm = Fraction(factorial(ma) * factorial(mb), factorial(m))
        out = SymTensor(self.n, m)
        acc: dict[Key, Scalar] = {}
        for ka, va in self.data.items():
            ca = _counts(ka)
            for kb, vb in other.data.items():
                key = tuple(sorted(ka + kb))
                ck = _counts(key)
                mult = 1
                for v, c in ca.items():
                    mult *= comb(ck[v], c)
                term = va * vb * (norm * mult)
                cur = acc.get(key)
                acc[key] = term if cur is None else cur + term
        out.data = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def trace(self) -> "SymTensor":
        """Contract two slots against the metric, summing over n directions."""
        if self.m < 2:
            raise ValueError("trace needs degree >= 2")
        out = SymTensor(self.n, self.m - 2)
        acc: dict[Key, Scalar] = {}
        for kp in key_list(self.n, self.m - 2):
            total = Scalar(0)
            for i in range(self.n):
                total = total + self.get(kp + (i, i))
            if not total.is_zero():
                acc[kp] = total
        out.data = acc
        return out

    def contract_one(self, vec: Sequence[Scalar]) -> "SymTensor":
        """Contract one slot with a vector; symmetric in the remaining slots."""
        if self.m < 1:
            raise ValueError("contract_one needs degree >= 1")
        out = SymTensor(self.n, self.m - 1)
        acc: dict[Key, Scalar] = {}
        for kp in key_list(self.n, self.m - 1):
            total = Scalar(0)
            for w in range(self.n):
                c = Scalar.of(vec[w])
                if not c.is_zero():
                    total = total + self.get(kp + (w,)) * c
            if not total.is_zero():
                acc[kp] = total
        out.data = acc
        return out

    def eval_at(self, vec: Sequence[Scalar]) -> Scalar:
        """T(v, ..., v)."""
        poly = Scalar(0)
        for k, val in self.data.items():
            prod = Scalar(orbit_size(k))
            for idx in k:
                prod = prod * Scalar.of(vec[idx])
            poly = poly + val * prod
        return poly

    def contract_all(self, vectors: Sequence[Sequence[Scalar]]) -> Scalar:
        """T(v_1, ..., v_m) for possibly distinct vectors."""
        if len(vectors) != self.m:
            raise ValueError("wrong number of vectors")
        cur = self
        for v in vectors:
            cur = cur.contract_one(v)
        return cur.data.get((), Scalar(0)) if cur.m == 0 else Scalar(0)

    def inner(self, other: "SymTensor") -> Scalar:
        """Bilinear 1/m!-normalized full contraction."""
        self._check_shape(other)
        small, big = (self, other) if len(self.data) <= len(other.data) else (other, self)
        total = Scalar(0)
        for k, v in small.data.items():
            w = big.data.get(k)
            if w is not None:
                weight = Fraction(1)
                for idx in set(k):
                    weight /= factorial(k.count(idx))
                total = total + v * w * Scalar(weight)
        return total

    def plain_inner(self, other: "SymTensor") -> Scalar:
        """Unnormalized full contraction (sum over all m-tuples)."""
        return self.inner(other) * Scalar(factorial(self.m))

    def herm_inner(self, other: "SymTensor") -> Scalar:
        """Sesquilinear variant: inner(self, conj(other))."""
        return self.inner(other.conj())

    # -- slot transforms ------------------------------------------------------

    def compose_columns(self, cols: Sequence[Sequence[tuple[int, Scalar]]]) -> "SymTensor":
        """(T o M)(c_1..c_m) = T(M c_1, ..., M c_m) for sparse M.

        cols[c] lists the nonzero (row, coefficient) pairs of column c.
        """
        out = SymTensor(self.n, self.m)
        acc: dict[Key, Scalar] = {}
        for key in key_list(self.n, self.m):
            total = Scalar(0)
            for combo in itertools.product(*(cols[c] for c in key)):
                coeff = Scalar(1)
                for _, cf in combo:
                    coeff = coeff * cf
                src = tuple(sorted(w for w, _ in combo))
                val = self.data.get(src)
                if val is not None:
                    total = total + val * coeff
            if not total.is_zero():
                acc[key] = total
        out.data = acc
        return out

    def twist_sum(self, cols: Sequence[Sequence[tuple[int, Scalar]]]) -> "SymTensor":
        """U(c_1,...,c_m) = sum_a T(c_1, ..., M c_a, ..., c_m) for sparse M.

        cols[c] lists the nonzero (row, coefficient) pairs of column c of M.
        The sum over slots of a one-slot substitution is again symmetric.
        Evaluated pull-style at every result key: substituting slot value v
        (count_K(v) equal positions) by each row w of column v.
        """
        out = SymTensor(self.n, self.m)
        acc: dict[Key, Scalar] = {}
        for key in key_list(self.n, self.m):
            total = Scalar(0)
            for v in set(key):
                base = list(key)
                base.remove(v)
                count = Scalar(key.count(v))
                for w, cf in cols[v]:
                    val = self.data.get(tuple(sorted(base + [w])))
                    if val is not None:
                        total = total + val * cf * count
            if not total.is_zero():
                acc[key] = total
        out.data = acc
        return out

    # -- polynomial view --------------------------------------------------------

    def to_poly(self) -> dict[tuple[int, ...], Scalar]:
        """Coefficients of v -> T(v,...,v) as a map exponent-vector -> Scalar."""
        poly: dict[tuple[int, ...], Scalar] = {}
        for k, val in self.data.items():
            expo = [0] * self.n
            for idx in k:
                expo[idx] += 1
            e = tuple(expo)
            term = val * Scalar(orbit_size(k))
            cur = poly.get(e)
            poly[e] = term if cur is None else cur + term
        return {e: c for e, c in poly.items() if not c.is_zero()}

    # -- vector space view -----------------------------------------------------

    def to_vector(self) -> list[Scalar]:
        return [self.data.get(k, Scalar(0)) for k in key_list(self.n, self.m)]

    @staticmethod
    def from_vector(n: int, m: int, vec: Sequence[Scalar]) -> "SymTensor":
        keys = key_list(n, m)
        if len(vec) != len(keys):
            raise ValueError("component vector has wrong length")
        return SymTensor(n, m, dict(zip(keys, vec)))


def metric(n: int) -> SymTensor:
    """The flat metric g0 as a degree-2 tensor."""
    return SymTensor(n, 2, {(i, i): Scalar(1) for i in range(n)})


def l_raise(t: SymTensor) -> SymTensor:
    """L(T) = Sym(T tensor g0)."""
    return t.sym_mul(metric(t.n))


@lru_cache(maxsize=None)
def _trace_of_l_inverse(n: int, m: int) -> tuple[tuple[Key, ...], tuple[tuple[Scalar, ...], ...]]:
    """Inverse of B -> trace(L(B)) on degree-(m-2) tensors, cached per shape."""
    keys = key_list(n, m - 2)
    cols: list[list[Scalar]] = []
    for k in keys:
        basis_elt = SymTensor(n, m - 2, {k: Scalar(1)})
        image = l_raise(basis_elt).trace()
        cols.append(image.to_vector())
    # cols[j][i] is entry (i, j) of the matrix
    mat = [[cols[j][i] for j in range(len(keys))] for i in range(len(keys))]
    inv = invert(mat)
    return keys, tuple(tuple(row) for row in inv)


def trace_decompose(t: SymTensor) -> list[SymTensor]:
    """Split T = sum_k L^k(u_k) with every u_k trace-free.

    Returns [u_0, u_1, ...] with deg(u_k) = m - 2k. Exact round trip:
    recompose(trace_decompose(T)) == T.
    """
    if t.m <= 1:
        return [t.copy()]
    keys, inv = _trace_of_l_inverse(t.n, t.m)
    rhs = t.trace().to_vector()
    b_vec = mat_vec([list(r) for r in inv], rhs)
    b = SymTensor.from_vector(t.n, t.m - 2, b_vec)
    u0 = t - l_raise(b)
    return [u0] + trace_decompose(b)


def recompose(parts: Sequence[SymTensor]) -> SymTensor:
    """Inverse of trace_decompose."""
    total: SymTensor | None = None
    for k, u in enumerate(parts):
        term = u
        for _ in range(k):
            term = l_raise(term)
        total = term if total is None else total + term
    if total is None:
        raise ValueError("no parts to recompose")
    return total


def trace_free_part(t: SymTensor) -> SymTensor:
    return trace_decompose(t)[0]


def random_tensor(rng, n: int, m: int, *, complex_values: bool = False) -> SymTensor:
    """Dense random tensor with small rational entries."""
    data: dict[Key, Scalar] = {}
    for k in key_list(n, m):
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if complex_values else Fraction(0)
        data[k] = Scalar(re, im)
    return SymTensor(n, m, data)
