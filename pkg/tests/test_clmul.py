import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigmarecip import clmul
from oracles import clmul_naive

KERNELS = [
    clmul.clmul_schoolbook,
    lambda a, b: clmul.clmul_karatsuba(a, b, threshold_words=1),
    clmul.clmul_kronecker,
    clmul.clmul,
]


@pytest.mark.parametrize("kernel", KERNELS, ids=["schoolbook", "karatsuba", "kronecker", "dispatch"])
@given(a=st.integers(0, 1 << 700), b=st.integers(0, 1 << 700))
@settings(max_examples=60, deadline=None)
def test_kernels_match_naive(kernel, a, b):
    assert kernel(a, b) == clmul_naive(a, b)


@pytest.mark.parametrize("bits", [63, 64, 65, 127, 128, 129, 4095, 4096, 4097, 4160, 9000])
def test_kernels_agree_across_thresholds(bits):
    rng = random.Random(bits)
    a, b = rng.getrandbits(bits) | 1 << (bits - 1), rng.getrandbits(bits)
    ref = clmul.clmul_schoolbook(a, b)
    assert clmul.clmul_karatsuba(a, b) == ref
    assert clmul.clmul_karatsuba(a, b, threshold_words=2) == ref
    assert clmul.clmul_kronecker(a, b) == ref
    assert clmul.clmul(a, b) == ref


def test_schoolbook_matches_naive_at_word_boundaries():
    rng = random.Random(7)
    for bits in (1, 2, 63, 64, 65, 130):
        a, b = rng.getrandbits(bits), rng.getrandbits(bits)
        assert clmul.clmul_schoolbook(a, b) == clmul_naive(a, b)


def test_unbalanced_operands():
    rng = random.Random(3)
    a, b = rng.getrandbits(20000), rng.getrandbits(70)
    ref = clmul.clmul_schoolbook(a, b)
    assert clmul.clmul_kronecker(a, b) == ref
    assert clmul.clmul_karatsuba(a, b, threshold_words=1) == ref


def test_kronecker_dense_operands_need_wide_slots():
    # all-ones operands push every slot to its maximum count
    a = (1 << 300) - 1
    assert clmul.clmul_kronecker(a, a) == clmul_naive(a, a)


def test_zero_and_one():
    assert clmul.clmul(0, 12345) == 0
    assert clmul.clmul(1, 12345) == 12345


def test_unknown_method():
    with pytest.raises(ValueError):
        clmul.clmul(3, 3, method="fft")


def test_bit_array_round_trip():
    x = random.Random(1).getrandbits(1001)
    assert clmul.array_to_bits(clmul.bits_to_array(x, 1001)) == x
