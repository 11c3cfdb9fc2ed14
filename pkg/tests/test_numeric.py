import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isoperim.numeric import (
    EXCEPTION_CEILING, MAX_N, FGDecomposition, decompose, f_array, f_ceiling_form, f_nearest_form, f_of,
    f_shifted_ceiling_form, g_array, g_iterate, g_of, g_orbit, isqrt, triangular,
)


@pytest.mark.parametrize("m,r", [(0, 0), (16, 4), (17, 4), (24, 4), (25, 5)])
def test_isqrt(m, r):
    assert isqrt(m) == r


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@pytest.mark.parametrize("n,f,g", [(0, 0, 0), (7, 4, 3), (10, 4, 0), (2, 2, 1), (3, 2, 0), (6, 3, 0), (4, 3, 2)])
def test_decompose_examples(n, f, g):
    assert (f_of(n), g_of(n)) == (f, g)
    assert decompose(n) == FGDecomposition(n, f, g)


def test_decompose_ceiling_value():
    d = decompose(149_894)
    assert triangular(d.f) - d.g == 149_894 and triangular(d.f - 1) < 149_894


def test_decomposition_invariant_dense():
    n = np.arange(1, 10**6 + 1)
    f, g = f_array(n), g_array(n)
    assert np.all(f * (f + 1) // 2 - g == n)
    assert np.all((0 <= g) & (g < f))


def test_f_array_matches_scalar():
    for n in list(range(300)) + [10**6, 10**6 - 1, 500500, 500501]:
        assert f_array([n])[0] == f_of(n)


@given(st.integers(0, MAX_N))
def test_f_forms_agree(n):
    assert f_of(n) == f_ceiling_form(n) == f_shifted_ceiling_form(n) == f_nearest_form(n)


@given(st.integers(1, MAX_N))
def test_f_brackets(n):
    f = f_of(n)
    assert triangular(f - 1) < n <= triangular(f)
    assert 0 <= g_of(n) < f


@given(st.integers(1, 10**15))
def test_g_shift_invariance(n):
    f, g = f_of(n), g_of(n)
    if g < f - 1:
        assert g_of(n - f) == g


def test_g_shift_exact_rule():
    # removing f(n) keeps the row offset unless n is the first entry of its row
    for n in range(1, 5000):
        f, g = f_of(n), g_of(n)
        if g < f - 1:
            assert g_of(n - f) == g


def test_ceiling_checks():
    with pytest.raises(ValueError):
        f_of(-1)
    with pytest.raises(ValueError):
        f_of(MAX_N + 1)
    f_of(MAX_N)


def test_invalid_decomposition_rejected():
    with pytest.raises(ValueError):
        FGDecomposition(7, 4, 2)
    with pytest.raises(ValueError):
        FGDecomposition(10, 5, 5)


def test_orbit_examples():
    assert g_orbit(100).phi == 0
    o = g_orbit(149_895)
    assert o.phi == 1 and o.base == g_of(149_895) <= EXCEPTION_CEILING
    big = g_orbit(10**12)
    assert big.phi <= math.ceil(math.log2(math.log2(10**12 / 2))) + 1
    assert big.row_sum() == sum(f_of(x) for x in big.iterates[:-1])


def test_orbit_threshold_zero_terminates():
    o = g_orbit(10**9, threshold=0)
    assert o.iterates[-1] == 0
    assert g_of(0) == 0


def test_g_iterate():
    n = 10**12
    assert g_iterate(n, 2) == g_orbit(n, 0).iterates[2]
