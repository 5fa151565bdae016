import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from henonseq import (
    BitSequence,
    InsufficientSamples,
    conjectured_pmf,
    lc_moments,
    lc_profile,
    linear_complexity,
)
from henonseq.lincomp import berlekamp_massey, expected_random_lc

from oracles import brute_force_lc, lfsr_generates


@pytest.mark.parametrize("bits, lc", [("0000", 0), ("0001", 4), ("110", 2), ("1111", 1), ("", 0)])
def test_examples(bits, lc):
    assert linear_complexity(BitSequence.from_string(bits)) == lc
    assert brute_force_lc([int(c) for c in bits]) == lc


def test_exhaustive_short_sequences_match_brute_force(kernels):
    for n in range(1, 9):
        for bits in itertools.product((0, 1), repeat=n):
            L, _, _ = kernels.berlekamp_massey(np.array(bits, np.uint8), False)
            assert L == brute_force_lc(bits), bits


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=400))
def test_backends_agree(bits):
    from conftest import _core
    from henonseq import _pure

    arr = np.array(bits, np.uint8)
    ref = _pure.berlekamp_massey(arr, True)
    if _core is not None:
        got = _core.berlekamp_massey(arr, True)
        assert got[:2] == ref[:2]
        assert got[2].tolist() == ref[2].tolist()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=300))
def test_connection_polynomial_generates_sequence(bits):
    L, conn = berlekamp_massey(bits)
    assert conn & 1 == 1
    assert conn.bit_length() - 1 <= L
    taps = [(conn >> i) & 1 for i in range(1, L + 1)]
    assert lfsr_generates(bits, taps)


@pytest.mark.parametrize("bits, profile", [("0001", (0, 0, 0, 4)), ("1111", (1, 1, 1, 1))])
def test_profile_examples(bits, profile):
    assert lc_profile(BitSequence.from_string(bits)).values == profile


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=200))
def test_profile_invariants(bits):
    prof = lc_profile(bits).values
    assert prof[-1] == linear_complexity(bits)
    assert all(0 <= c <= i for i, c in enumerate(prof, start=1))
    assert all(a <= b for a, b in zip(prof, prof[1:]))
    assert lc_profile(bits).jumps_ok()


def test_profile_prefixes_brute_force():
    rng = np.random.default_rng(5)
    bits = rng.integers(0, 2, 11).tolist()
    prof = lc_profile(bits).values
    assert list(prof) == [brute_force_lc(bits[:i]) for i in range(1, 12)]


def test_profile_requires_bits():
    with pytest.raises(ValueError):
        lc_profile([])


def test_conjectured_pmf_midpoint():
    assert conjectured_pmf(64).pmf[32] == 0.5


def test_conjectured_pmf_n4():
    assert conjectured_pmf(4).pmf == {1: 0.125, 2: 0.5, 3: 0.25}


def test_conjectured_pmf_n3():
    assert conjectured_pmf(3).pmf == {1: 0.25, 2: 0.5}


@pytest.mark.parametrize("N", [3, 4, 17, 64, 65, 255, 256])
def test_conjectured_mass_exact(N):
    d = conjectured_pmf(N, exact=True)
    assert sum(d.pmf.values()) == 1 - Fraction(2) ** (1 - N)


def test_expected_random_means():
    assert expected_random_lc(64) == pytest.approx(32.2222, abs=1e-4)
    assert expected_random_lc(65) == pytest.approx(32.7778, abs=1e-4)


def test_expected_mean_matches_enumeration():
    for N in range(1, 11):
        total = sum(brute_force_lc(b) for b in itertools.product((0, 1), repeat=N))
        assert expected_random_lc(N) == pytest.approx(total / 2**N, abs=1e-12)


def test_moments():
    assert lc_moments([2, 2, 2]) == (2.0, 0.0)
    assert lc_moments([1, 3]) == (2.0, 2.0)
    with pytest.raises(InsufficientSamples):
        lc_moments([1])
