"""Complex dense and compact-symmetric tensor containers.

A :class:`DenseTensor` stores every entry of an order-m tensor with dimensions
(n1,...,nm) in a row-major complex array.  A :class:`SymTensor` stores a
symmetric tensor of order m and dimension n compactly: one entry per power
vector alpha with |alpha| <= m, in graded-lex order.  Both are immutable in
intent: operations return new objects and never mutate their inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .monomials import (
    grlex_key,
    monomials_upto,
    multiindex_to_power,
    multiplicities,
)

__all__ = [
    "DenseTensor",
    "SymTensor",
    "outer_product",
    "sym_power",
    "tensor_norm",
    "pairing",
    "monomial_values",
]


@dataclass(frozen=True)
class DenseTensor:
    """Order-m complex tensor with explicit dimensions, row-major storage."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.complex128)
        if arr.ndim < 1 or any(d < 1 for d in arr.shape):
            raise ValueError(f"invalid tensor shape {arr.shape}")
        object.__setattr__(self, "data", arr)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def order(self) -> int:
        return self.data.ndim

    def entry(self, idx) -> complex:
        """Entry at the 1-based multi-index (i1,...,im)."""
        return complex(self.data[tuple(i - 1 for i in idx)])

    def mono(self, idx) -> complex:
        """Entry addressed by a multi-linear monomial (0-based indices)."""
        for i, n in zip(idx, self.dims):
            if not 0 <= i < n:
                raise ValueError(f"monomial index {idx} out of range for dims {self.dims}")
        return complex(self.data[tuple(idx)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        return DenseTensor(self.data + other.data)

    def __sub__(self, other: "DenseTensor") -> "DenseTensor":
        return DenseTensor(self.data - other.data)

    def __mul__(self, c) -> "DenseTensor":
        return DenseTensor(self.data * c)

    __rmul__ = __mul__


class SymTensor:
    """Symmetric order-m tensor over C^n, stored one entry per power vector."""

    def __init__(self, n: int, m: int, values: np.ndarray):
        if n < 1 or m < 1:
            raise ValueError(f"invalid (n, m) = ({n}, {m})")
        self.n = n
        self.m = m
        self.nbar = n - 1
        self.powers = np.array(monomials_upto(self.nbar, m), dtype=np.int64).reshape(-1, self.nbar)
        if len(values) != len(self.powers):
            raise ValueError(
                f"expected {len(self.powers)} entries for n={n}, m={m}, got {len(values)}"
            )
        self.values = np.asarray(values, dtype=np.complex128).copy()
        self._pos = {tuple(p): i for i, p in enumerate(self.powers)}
        self._weights = multiplicities(self.powers, m)

    @classmethod
    def zeros(cls, n: int, m: int) -> "SymTensor":
        nmon = len(monomials_upto(n - 1, m))
        return cls(n, m, np.zeros(nmon, dtype=np.complex128))

    @classmethod
    def from_function(cls, n: int, m: int, fn) -> "SymTensor":
        """Build from a symmetric entry formula fn(i1,...,im), 1-based indices."""
        t = cls.zeros(n, m)
        for row, alpha in enumerate(t.powers):
            rep = [1] * (m - int(alpha.sum()))
            for k, a in enumerate(alpha):
                rep.extend([k + 2] * int(a))
            t.values[row] = fn(*rep)
        return t

    @classmethod
    def from_dense(cls, dense: DenseTensor, tol: float = 0.0) -> "SymTensor":
        """Compact a dense symmetric tensor; checks symmetry when tol > 0."""
        dims = dense.dims
        n, m = dims[0], dense.order
        if any(d != n for d in dims):
            raise ValueError(f"dims {dims} are not cubic")
        t = cls.zeros(n, m)
        seen = {}
        for idx in itertools.product(range(1, n + 1), repeat=m):
            alpha = multiindex_to_power(idx, n)
            val = dense.entry(idx)
            if alpha in seen:
                if tol > 0 and abs(val - seen[alpha]) > tol:
                    raise ValueError(f"tensor is not symmetric at index {idx}")
            else:
                seen[alpha] = val
                t.values[t._pos[alpha]] = val
        return t

    def to_dense(self) -> DenseTensor:
        arr = np.empty((self.n,) * self.m, dtype=np.complex128)
        for row, alpha in enumerate(self.powers):
            rep = [0] * (self.m - int(alpha.sum()))
            for k, a in enumerate(alpha):
                rep.extend([k + 1] * int(a))
            for perm in set(itertools.permutations(rep)):
                arr[perm] = self.values[row]
        return DenseTensor(arr)

    @property
    def weights(self) -> np.ndarray:
        """Multi-index count of each stored power vector."""
        return self._weights

    def at_power(self, alpha) -> complex:
        pos = self._pos.get(tuple(alpha))
        if pos is None:
            raise KeyError(f"power vector {tuple(alpha)} not addressable for n={self.n}, m={self.m}")
        return complex(self.values[pos])

    def position(self, alpha) -> int:
        pos = self._pos.get(tuple(alpha))
        if pos is None:
            raise KeyError(f"power vector {tuple(alpha)} not addressable for n={self.n}, m={self.m}")
        return pos

    def entry(self, idx) -> complex:
        """Entry at the 1-based multi-index; invariant under permutations."""
        if len(idx) != self.m:
            raise ValueError(f"expected {self.m} indices, got {len(idx)}")
        return self.at_power(multiindex_to_power(idx, self.n))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self._weights * np.abs(self.values) ** 2)))

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check_compatible(other)
        return SymTensor(self.n, self.m, self.values + other.values)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        self._check_compatible(other)
        return SymTensor(self.n, self.m, self.values - other.values)

    def __mul__(self, c) -> "SymTensor":
        return SymTensor(self.n, self.m, self.values * c)

    __rmul__ = __mul__

    def _check_compatible(self, other: "SymTensor"):
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError(
                f"incompatible symmetric tensors: ({self.n},{self.m}) vs ({other.n},{other.m})"
            )


def outer_product(vectors) -> DenseTensor:
    """Rank-1 tensor u^1 (x) ... (x) u^m from m complex vectors."""
    vectors = [np.asarray(v, dtype=np.complex128) for v in vectors]
    if not vectors:
        raise ValueError("outer_product needs at least one vector")
    out = vectors[0]
    for v in vectors[1:]:
        out = np.multiply.outer(out, v)
    return DenseTensor(out)


def monomial_values(v: np.ndarray, powers: np.ndarray, m: int) -> np.ndarray:
    """Evaluate v0^(m-|alpha|) * v1^a1 * ... for every power vector row.

    `v` is indexed 0..n-1; the implicit exponent of v0 completes each row to
    total degree m.
    """
    v = np.asarray(v, dtype=np.complex128)
    powers = np.asarray(powers, dtype=np.int64)
    full = np.column_stack([m - powers.sum(axis=1), powers])
    out = np.ones(len(powers), dtype=np.complex128)
    for k in range(full.shape[1]):
        table = v[k] ** np.arange(full[:, k].max() + 1)
        out *= table[full[:, k]]
    return out


def sym_power(v, m: int) -> SymTensor:
    """m-th symmetric tensor power of a vector v in C^n, stored compactly."""
    v = np.asarray(v, dtype=np.complex128)
    t = SymTensor.zeros(len(v), m)
    t.values[:] = monomial_values(v, t.powers, m)
    return t


def tensor_norm(t) -> float:
    """Frobenius-type norm summing |entry|^2 over all multi-indices."""
    return t.norm()


def pairing(p: dict, t) -> complex:
    """Apply the linear functional of a coefficient map to a tensor.

    For a :class:`SymTensor`, keys of `p` are power vectors; for a
    :class:`DenseTensor`, keys are multi-linear monomials (0-based index
    tuples).  Returns sum of p[mu] * t_mu.
    """
    total = 0.0 + 0.0j
    if isinstance(t, SymTensor):
        for alpha, coeff in p.items():
            total += coeff * t.at_power(alpha)
    else:
        for mono, coeff in p.items():
            total += coeff * t.mono(mono)
    return total
