import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gptensor.monomials import (
    count_upto,
    grlex_key,
    monomials_exact,
    monomials_upto,
    multiindex_to_power,
    multiplicities,
    multiplicity,
    power_to_multiindices,
)


def brute_force_upto(nvars, deg):
    """Oracle: enumerate exponent boxes and sort by the graded-lex key."""
    all_tuples = [
        t for t in itertools.product(range(deg + 1), repeat=nvars) if sum(t) <= deg
    ]
    return sorted(all_tuples, key=grlex_key)


@pytest.mark.parametrize("nvars,deg", [(1, 3), (2, 3), (3, 4), (4, 2), (5, 3)])
def test_monomials_upto_matches_bruteforce(nvars, deg):
    assert list(monomials_upto(nvars, deg)) == brute_force_upto(nvars, deg)


def test_listing_starts_with_constant_and_linears():
    mons = monomials_upto(3, 2)
    assert mons[0] == (0, 0, 0)
    assert mons[1:4] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # degree-2 block: x1^2, x1 x2, x1 x3, x2^2, x2 x3, x3^2
    assert mons[4:] == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_monomials_exact_degrees():
    for d in range(4):
        assert all(sum(a) == d for a in monomials_exact(3, d))


@given(st.integers(0, 6), st.integers(0, 6))
def test_count_upto_formula(nvars, deg):
    assert count_upto(nvars, deg) == math.comb(nvars + deg, deg)
    assert count_upto(nvars, deg) == len(monomials_upto(nvars, deg))


def test_multiindex_to_power_examples():
    # (1,1,1) in n=4 -> constant; (2,3,4) -> x1 x2 x3
    assert multiindex_to_power((1, 1, 1), 4) == (0, 0, 0)
    assert multiindex_to_power((2, 3, 4), 4) == (1, 1, 1)
    assert multiindex_to_power((2, 2, 1), 3) == (2, 0)
    with pytest.raises(ValueError):
        multiindex_to_power((0, 1), 3)
    with pytest.raises(ValueError):
        multiindex_to_power((4, 1), 3)


def test_multiindex_to_power_permutation_invariant_exhaustive():
    """Every permutation of a multi-index maps to the same power vector (n<=4, m<=3)."""
    for n in range(2, 5):
        for m in range(1, 4):
            for idx in itertools.product(range(1, n + 1), repeat=m):
                alpha = multiindex_to_power(idx, n)
                for perm in itertools.permutations(idx):
                    assert multiindex_to_power(perm, n) == alpha


def test_power_to_multiindices_roundtrip_and_count():
    alpha = (1, 2)
    m = 4
    indices, count = power_to_multiindices(alpha, m)
    # count is the multinomial m! / (a0! a1! a2!) with a0 = m - |alpha|
    assert count == math.factorial(4) // (math.factorial(1) * math.factorial(1) * math.factorial(2))
    assert len(indices) == count
    for idx in indices:
        assert multiindex_to_power(idx, 3) == alpha
    with pytest.raises(ValueError):
        power_to_multiindices((3, 2), 4)


@given(st.integers(2, 5), st.integers(1, 5), st.data())
@settings(max_examples=50, deadline=None)
def test_multiplicity_counts_permutations(n, m, data):
    mons = monomials_upto(n - 1, m)
    alpha = data.draw(st.sampled_from(mons))
    indices, count = power_to_multiindices(alpha, m)
    assert multiplicity(alpha, m) == len(indices) == count


def test_multiplicities_vectorized_matches_scalar():
    mons = np.array(monomials_upto(3, 4))
    vec = multiplicities(mons, 4)
    for row, alpha in zip(vec, mons):
        assert row == multiplicity(tuple(alpha), 4)


def test_grlex_key_total_order():
    mons = monomials_upto(3, 3)
    keys = [grlex_key(a) for a in mons]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
