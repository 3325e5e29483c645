import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigmarecip import f2ps, seqgen
from sigmarecip.f2ps import BitSeries
from conftest import bit_series
from oracles import reciprocal_by_representations, series_mul_naive


def series(exps, n):
    return f2ps.from_indices(exps, n)


def geometric(n):
    return BitSeries(n, (1 << n) - 1)


# -- construction -----------------------------------------------------------


def test_from_indices_examples():
    assert series([1, 4, 9], 10).bits == (1 << 1) | (1 << 4) | (1 << 9)
    assert series([], 5).is_zero()
    assert series([0, 3, 100], 10).indices() == [0, 3]


def test_from_indices_rejects_zero_precision():
    with pytest.raises(f2ps.PrecisionError):
        series([0], 0)
    with pytest.raises(f2ps.PrecisionError):
        BitSeries(0)


def test_canonical_padding():
    f = BitSeries(5, 0b1111111)
    assert f.bits == 0b11111
    assert f == BitSeries(5, 0b11111)


def test_to_indices_examples():
    assert f2ps.to_indices(BitSeries.zero(7)) == []
    assert f2ps.to_indices(series([0, 1, 3], 8)) == [0, 1, 3]


@given(bit_series())
def test_indices_round_trip(f):
    assert f2ps.from_indices(f2ps.to_indices(f), f.precision) == f


def test_getitem():
    f = series([0, 2], 4)
    assert [f[i] for i in range(4)] == [1, 0, 1, 0]
    with pytest.raises(IndexError):
        f[4]


# -- addition / multiplication -------------------------------------------------


def test_add_examples():
    f = series([0, 5, 6], 10)
    assert (f + f).is_zero()
    assert series([0, 1], 8) + series([0, 2], 8) == series([1, 2], 8)
    assert f2ps.add(f, BitSeries.zero(7)) == f2ps.truncate(f, 7)


def test_mul_examples():
    for n in (1, 2, 17, 300):
        assert series([0, 1], n) * geometric(n) == BitSeries.one(n)
    assert series([2], 8) * series([3], 8) == series([5], 8)
    assert (series([2], 5) * series([3], 5)).is_zero()


def test_mul_random_against_naive_4096():
    rng = random.Random(2024)
    n = 4096
    for _ in range(3):
        a = [rng.getrandbits(1) for _ in range(n)]
        b = [rng.getrandbits(1) for _ in range(n)]
        fa, fb = series([i for i in range(n) if a[i]], n), series([i for i in range(n) if b[i]], n)
        expected = series_mul_naive(a, b, n)
        assert f2ps.mul(fa, fb).indices() == [i for i in range(n) if expected[i]]


@pytest.mark.parametrize("method", ["schoolbook", "karatsuba", "kronecker"])
def test_mul_methods_agree(method):
    rng = random.Random(5)
    for n in (64 * 64 - 1, 64 * 64, 64 * 64 + 1, 9001):
        f, g = BitSeries(n, rng.getrandbits(n)), BitSeries(n, rng.getrandbits(n))
        assert f2ps.mul(f, g, method) == f2ps.mul(f, g, "schoolbook")


def test_mul_precision_is_min():
    assert f2ps.mul(BitSeries.one(10), BitSeries.one(4)).precision == 4


@given(bit_series(max_precision=300), st.data())
@settings(max_examples=50)
def test_mul_commutative_associative_distributive(f, data):
    n = f.precision
    g = BitSeries(n, data.draw(st.integers(0, (1 << n) - 1)))
    h = BitSeries(n, data.draw(st.integers(0, (1 << n) - 1)))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


def test_ring_laws_at_1024():
    rng = random.Random(11)
    n = 1024
    for _ in range(5):
        f, g, h = (BitSeries(n, rng.getrandbits(n)) for _ in range(3))
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


# -- squaring, roots, powers ------------------------------------------------------


def test_square_examples():
    assert f2ps.square(series([0, 1, 2], 5)) == series([0, 2, 4], 5)
    s = series([1, 4, 9, 16], 33)
    assert f2ps.square(s).indices() == [2, 8, 18, 32]


@given(bit_series())
def test_square_is_self_product(f):
    assert f2ps.square(f) == f * f


@given(bit_series(), st.data())
def test_childrens_binomial(f, data):
    g = BitSeries(f.precision, data.draw(st.integers(0, (1 << f.precision) - 1)))
    assert f2ps.square(f + g) == f2ps.square(f) + f2ps.square(g)


def test_sqrt_even_examples():
    assert f2ps.sqrt_even(series([0, 2, 6], 7)) == series([0, 1, 3], 4)
    with pytest.raises(f2ps.OddExponentPresent):
        f2ps.sqrt_even(series([0, 1], 4))


@given(bit_series())
def test_sqrt_of_square(f):
    half = (f.precision + 1) // 2
    r = f2ps.sqrt_even(f2ps.square(f))
    assert r == f2ps.truncate(f, half)
    assert r.precision == half


@given(bit_series(max_precision=200), st.integers(0, 40))
@settings(max_examples=60)
def test_pow_matches_repeated_product(f, k):
    expected = BitSeries.one(f.precision)
    for _ in range(k):
        expected = expected * f
    assert f2ps.pow(f, k) == expected


def test_pow_examples():
    d = seqgen.odd_squares(200)
    assert f2ps.pow(d, 0) == BitSeries.one(200)
    assert f2ps.pow(d, 3) == d * d * d
    # smallest triple sum of odd squares is 1 + 1 + 1
    triple = {a + b + c for a in (1, 9, 25) for b in (1, 9, 25) for c in (1, 9, 25)}
    assert min(triple) == 3 == f2ps.pow(d, 3).indices()[0]


# -- inversion ---------------------------------------------------------------------


def test_inverse_geometric():
    for n in (1, 2, 3, 64, 65, 1000):
        assert f2ps.inverse(series([0, 1], n)) == geometric(n)


def test_inverse_of_sigma_at_10():
    # b_0..b_9 by hand from R(n) even: 0, 1, 3, 7, 9
    assert f2ps.inverse(seqgen.sigma_parity(10)).indices() == [0, 1, 3, 7, 9]


def test_inverse_pentagonal_has_p4_odd():
    p = f2ps.inverse(seqgen.generalized_pentagonal(20))
    assert p[4] == 1  # p(4) = 5


def test_inverse_requires_unit():
    with pytest.raises(f2ps.ZeroConstantTerm):
        f2ps.inverse(series([1, 2], 5))
    with pytest.raises(f2ps.ZeroConstantTerm):
        f2ps.inverse_oracle(series([1, 2], 5))


@given(bit_series(unit=True))
def test_inverse_properties(f):
    g = f2ps.inverse(f)
    assert g.precision == f.precision
    assert f * g == BitSeries.one(f.precision)
    assert g == f2ps.inverse_oracle(f)


def test_inverse_oracle_random_2048():
    rng = random.Random(99)
    for _ in range(100):
        f = BitSeries(2048, rng.getrandbits(2048) | 1)
        assert f2ps.inverse(f) == f2ps.inverse_oracle(f)


def test_inverse_oracle_geometric():
    assert f2ps.inverse_oracle(series([0, 1], 64)) == f2ps.inverse(series([0, 1], 64))


def test_inverse_matches_representation_definition():
    a = {0, 1, 2, 4, 8, 9, 16, 18, 25}
    b = reciprocal_by_representations(a, 30)
    assert f2ps.inverse(series(sorted(a), 30)).indices() == sorted(b)


def test_sigma_bar_residues():
    sb = f2ps.inverse_oracle(seqgen.sigma_parity(4096))
    assert {e % 8 for e in sb.indices()} <= {0, 1, 3, 7}


# -- derivative, parts, residues -----------------------------------------------------


def test_derivative_examples():
    assert f2ps.derivative(series([3, 4], 6)) == series([2], 5)
    assert f2ps.derivative(BitSeries.one(4)).is_zero()
    with pytest.raises(f2ps.PrecisionError):
        f2ps.derivative(BitSeries.one(1))


@given(bit_series(min_precision=2))
def test_derivative_of_square_vanishes(f):
    assert f2ps.derivative(f * f).is_zero()


def test_even_odd_examples():
    f = series([0, 1, 2], 3)
    assert f2ps.even_part(f) == series([0, 2], 3)
    assert f2ps.odd_part(f) == series([1], 3)
    assert f2ps.even_part(seqgen.triangular(50))[0] == 1


@given(bit_series())
def test_even_plus_odd(f):
    assert f2ps.even_part(f) + f2ps.odd_part(f) == f


def test_residue_extract():
    sb = f2ps.inverse(seqgen.sigma_parity(2000))
    assert f2ps.residue_extract(sb, 8, 0) == BitSeries.one(2000)
    assert f2ps.residue_extract(sb, 8, 1) == seqgen.odd_squares(2000)
    with pytest.raises(ValueError):
        f2ps.residue_extract(sb, 8, 9)


@given(bit_series(), st.integers(1, 12))
def test_residue_classes_partition(f, m):
    acc = BitSeries.zero(f.precision)
    for k in range(m):
        acc = acc + f2ps.residue_extract(f, m, k)
    assert acc == f


def test_downshift_decimate_examples():
    assert f2ps.downshift_decimate(series([7, 15], 16), 7, 8) == series([0, 1], 2)
    with pytest.raises(f2ps.StrideViolation):
        f2ps.downshift_decimate(series([3], 16), 7, 8)


def test_downshift_of_sigma_bar_7_is_square():
    n = 1 << 13
    sb = f2ps.inverse(seqgen.sigma_parity(n))
    v = f2ps.downshift_decimate(f2ps.residue_extract(sb, 8, 7), 7, 8)
    assert f2ps.odd_part(v).is_zero()
    # V = delta^8 / delta_e computed without going through sigma_bar
    delta = seqgen.triangular(v.precision)
    expected = f2ps.pow(delta, 8) * f2ps.inverse(f2ps.even_part(delta))
    assert v == expected


def test_monomial_mul():
    assert f2ps.monomial_mul(series([0, 2], 5), 2) == series([2, 4], 5)


# -- serialization ------------------------------------------------------------------


def test_f2s1_layout():
    f = series([0, 64, 69], 70)
    raw = f2ps.to_f2s1_bytes(f)
    assert raw[:4] == b"F2S1"
    assert int.from_bytes(raw[4:12], "little") == 70
    assert len(raw) == 12 + 16
    assert raw[12] == 1 and raw[20] == 0b100001


@given(bit_series())
def test_f2s1_round_trip(f):
    buf = io.BytesIO()
    f2ps.write_f2s1(f, buf)
    buf.seek(0)
    assert f2ps.read_f2s1(buf) == f


def test_f2s1_rejects_garbage():
    with pytest.raises(f2ps.FormatError):
        f2ps.from_f2s1_bytes(b"XXXX" + bytes(12))
    good = f2ps.to_f2s1_bytes(series([1], 3))
    with pytest.raises(f2ps.FormatError):
        f2ps.from_f2s1_bytes(good[:-1])
    padded = bytearray(good)
    padded[12] |= 0x80  # bit 7 is beyond precision 3
    with pytest.raises(f2ps.FormatError):
        f2ps.from_f2s1_bytes(bytes(padded))


def test_text_format():
    text = f2ps.format_indices([0, 3, 9], header="sigma\nprecision 10")
    assert text.startswith("# sigma\n# precision 10\n")
    assert f2ps.parse_indices(text) == [0, 3, 9]
    with pytest.raises(f2ps.FormatError):
        f2ps.parse_indices("3\n2\n")
    with pytest.raises(f2ps.FormatError):
        f2ps.parse_indices("x\n")


def test_operators():
    f = series([0, 1], 16)
    assert f ** -1 == geometric(16)
    assert BitSeries.one(16) / f == geometric(16)
    assert f - f == BitSeries.zero(16)
    assert "exponents=[0, 1]" in repr(f)
