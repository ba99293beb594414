import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gptensor.monomials import multiindex_to_power
from gptensor.tensors import (
    DenseTensor,
    SymTensor,
    monomial_values,
    outer_product,
    pairing,
    sym_power,
    tensor_norm,
)


def random_sym(n, m, seed=0):
    rng = np.random.default_rng(seed)
    t = SymTensor.zeros(n, m)
    t.values[:] = rng.standard_normal(len(t.values)) + 1j * rng.standard_normal(len(t.values))
    return t


class TestDenseTensor:
    def test_entry_indexing(self):
        arr = np.arange(24, dtype=float).reshape(2, 3, 4)
        t = DenseTensor(arr)
        assert t.dims == (2, 3, 4)
        assert t.order == 3
        assert t.entry((1, 1, 1)) == 0
        assert t.entry((2, 3, 4)) == 23
        assert t.mono((0, 0, 0)) == 0
        assert t.mono((1, 2, 3)) == 23
        with pytest.raises(ValueError):
            t.mono((2, 0, 0))

    def test_norm_and_arithmetic(self):
        rng = np.random.default_rng(3)
        a = DenseTensor(rng.standard_normal((3, 4, 2)) + 1j * rng.standard_normal((3, 4, 2)))
        b = DenseTensor(rng.standard_normal((3, 4, 2)))
        assert np.isclose(a.norm(), np.sqrt(np.sum(np.abs(a.data) ** 2)))
        assert np.allclose((a + b).data, a.data + b.data)
        assert np.allclose((a - b).data, a.data - b.data)
        assert np.allclose((2j * a).data, 2j * a.data)

    def test_invalid_shape(self):
        with pytest.raises(ValueError):
            DenseTensor(np.empty((2, 0, 3)))


class TestSymTensor:
    def test_entry_permutation_invariant(self):
        t = random_sym(4, 3, seed=1)
        for idx in itertools.product(range(1, 5), repeat=3):
            v = t.entry(idx)
            for perm in itertools.permutations(idx):
                assert t.entry(perm) == v

    def test_norm_matches_dense_oracle(self):
        for n, m, seed in [(3, 2, 0), (4, 3, 1), (3, 4, 2)]:
            t = random_sym(n, m, seed)
            dense = t.to_dense()
            assert np.isclose(t.norm(), dense.norm(), rtol=1e-12)

    def test_dense_roundtrip(self):
        t = random_sym(4, 3, seed=5)
        back = SymTensor.from_dense(t.to_dense(), tol=1e-12)
        assert np.allclose(back.values, t.values)

    def test_from_dense_rejects_asymmetric(self):
        arr = np.zeros((2, 2, 2))
        arr[0, 0, 1] = 1.0  # its permutations stay zero
        with pytest.raises(ValueError):
            SymTensor.from_dense(DenseTensor(arr), tol=1e-12)

    def test_from_dense_rejects_noncubic(self):
        with pytest.raises(ValueError):
            SymTensor.from_dense(DenseTensor(np.zeros((2, 3, 2))))

    def test_from_function(self):
        t = SymTensor.from_function(3, 3, lambda i, j, k: i + j + k)
        assert t.entry((1, 2, 3)) == 6
        assert t.entry((3, 3, 3)) == 9
        assert t.at_power((0, 0)) == 3

    def test_weights_are_multiindex_counts(self):
        t = SymTensor.zeros(3, 3)
        # constant power vector covers only (1,1,1); x1^3 covers only (2,2,2)
        assert t.weights[t.position((0, 0))] == 1
        assert t.weights[t.position((3, 0))] == 1
        # x1 x2 with m=3: indices are permutations of (1,2,3): 6 of them
        assert t.weights[t.position((1, 1))] == 6

    def test_arithmetic_and_compatibility(self):
        a, b = random_sym(3, 3, 0), random_sym(3, 3, 1)
        assert np.allclose((a + b).values, a.values + b.values)
        assert np.allclose((a - b).values, a.values - b.values)
        assert np.allclose((3.0 * a).values, 3.0 * a.values)
        with pytest.raises(ValueError):
            a + random_sym(4, 3, 0)

    def test_bad_sizes(self):
        with pytest.raises(ValueError):
            SymTensor(3, 3, np.zeros(5))
        with pytest.raises(ValueError):
            SymTensor(0, 3, np.zeros(1))
        with pytest.raises(KeyError):
            SymTensor.zeros(3, 2).at_power((3, 0))


class TestRankOne:
    def test_outer_product_entries(self):
        u = np.array([1.0, 2.0])
        v = np.array([1.0, 1j])
        w = np.array([2.0, 0.0, -1.0])
        t = outer_product([u, v, w])
        assert t.dims == (2, 2, 3)
        for i, j, k in itertools.product(range(2), range(2), range(3)):
            assert np.isclose(t.mono((i, j, k)), u[i] * v[j] * w[k])

    def test_sym_power_matches_dense_outer(self):
        rng = np.random.default_rng(7)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        t = sym_power(v, 3)
        dense = outer_product([v, v, v])
        assert np.allclose(t.to_dense().data, dense.data)

    def test_monomial_values_bruteforce(self):
        rng = np.random.default_rng(11)
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        t = SymTensor.zeros(3, 4)
        vals = monomial_values(v, t.powers, 4)
        for alpha, got in zip(t.powers, vals):
            expect = v[0] ** (4 - alpha.sum()) * v[1] ** alpha[0] * v[2] ** alpha[1]
            assert np.isclose(got, expect)


@given(st.integers(2, 4), st.integers(2, 3), st.integers(0, 10))
@settings(max_examples=25, deadline=None)
def test_tensor_norm_dispatch(n, m, seed):
    t = random_sym(n, m, seed)
    assert tensor_norm(t) == t.norm()
    d = t.to_dense()
    assert np.isclose(tensor_norm(d), tensor_norm(t), rtol=1e-12)


def test_pairing_sym_and_dense():
    t = random_sym(3, 2, seed=2)
    p = {(0, 0): 2.0, (1, 1): 1j}
    assert np.isclose(pairing(p, t), 2.0 * t.at_power((0, 0)) + 1j * t.at_power((1, 1)))
    d = DenseTensor(np.arange(8.0).reshape(2, 2, 2))
    q = {(0, 0, 0): 1.0, (1, 1, 1): -1.0}
    assert np.isclose(pairing(q, d), d.mono((0, 0, 0)) - d.mono((1, 1, 1)))


def test_power_lookup_consistent_with_multiindex():
    t = random_sym(4, 3, seed=9)
    for idx in [(1, 1, 2), (4, 4, 4), (2, 3, 4)]:
        assert t.entry(idx) == t.at_power(multiindex_to_power(idx, 4))
