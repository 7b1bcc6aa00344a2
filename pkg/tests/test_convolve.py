import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringtk.convolve import (
    convolution_power,
    cyclic_convolve,
    cyclic_power,
    exact_convolve,
    float_convolve,
    schoolbook_convolve,
)

vec = st.lists(st.integers(min_value=0, max_value=10**6), min_size=1, max_size=300)


@given(vec, vec)
@settings(max_examples=60, deadline=None)
def test_exact_matches_schoolbook(a, b):
    assert exact_convolve(a, b) == schoolbook_convolve(a, b)


def test_ntt_path_matches_schoolbook_long():
    rng = np.random.default_rng(5)
    a = rng.integers(0, 10**9, 2048).tolist()
    b = rng.integers(0, 10**9, 2048).tolist()
    # 2048*2048 > 2^17 forces the NTT path
    assert exact_convolve(a, b) == schoolbook_convolve(a, b)


def test_huge_entries_escalate_prime_count():
    a = [10**30, 10**31] * 300
    b = [10**30, 1] * 300
    assert exact_convolve(a, b) == schoolbook_convolve(a, b)


@given(vec.filter(lambda v: len(v) >= 2))
@settings(max_examples=30, deadline=None)
def test_cyclic_is_folded_linear(a):
    m = len(a)
    lin = schoolbook_convolve(a, a)
    folded = [0] * m
    for i, v in enumerate(lin):
        folded[i % m] += v
    assert cyclic_convolve(a, a, m) == folded


def test_convolution_power_matches_repeats():
    base = [0, 1, 0, 0, 1, 1]
    trunc = 20
    by_power = convolution_power(base, 4, trunc)
    acc = base
    for _ in range(3):
        acc = exact_convolve(acc, base, trunc=trunc)
    acc = acc + [0] * (trunc - len(acc))
    assert by_power == acc


def test_cyclic_power_mass():
    base = [3, 1, 4, 1, 5]
    out = cyclic_power(base, 3, 5)
    assert sum(out) == sum(base) ** 3


def test_truncation_is_exact_prefix():
    a = list(range(1, 50))
    full = exact_convolve(a, a)
    assert exact_convolve(a, a, trunc=10) == full[:10]


def test_float_convolve_matches_exact():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 1000, 300).tolist()
    b = rng.integers(0, 1000, 300).tolist()
    got = float_convolve(np.array(a, float), np.array(b, float))
    want = np.array(schoolbook_convolve(a, b), float)
    assert np.allclose(got, want, rtol=1e-12, atol=1e-6)


def test_empty_inputs():
    assert exact_convolve([], [1, 2]) == []


@pytest.mark.parametrize("t", [1, 2, 3, 7])
def test_power_mass_conservation(t):
    base = [1, 2, 0, 3]
    out = convolution_power(base, t, trunc=len(base) * t)
    # truncation keeps the full support here, so mass multiplies exactly
    assert sum(out) == sum(base) ** t
