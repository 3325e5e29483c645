import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmarecip import f2ps, seqgen
from sigmarecip.seqgen import SequenceKind
from oracles import is_square, partitions, sigma


def test_generator_examples():
    assert seqgen.sigma_parity(20).indices() == [0, 1, 2, 4, 8, 9, 16, 18]
    assert seqgen.triangular(16).indices() == [0, 1, 3, 6, 10, 15]
    assert seqgen.generalized_pentagonal(16).indices() == [0, 1, 2, 5, 7, 12, 15]
    assert seqgen.squares(17).indices() == [1, 4, 9, 16]
    assert seqgen.odd_squares(50).indices() == [1, 9, 25, 49]


def test_precision_one():
    for kind in SequenceKind:
        f = seqgen.generate(kind, 1)
        assert f.precision == 1
        # only squares and odd squares omit 0
        expected = 0 if kind in (SequenceKind.SQUARES, SequenceKind.ODD_SQUARES) else 1
        assert f.bits == expected


def test_generate_rejects_bad_input():
    with pytest.raises(f2ps.PrecisionError):
        seqgen.generate("sigma", 0)
    with pytest.raises(ValueError):
        seqgen.generate("primes", 10)


def test_from_name_accepts_both_spellings():
    assert SequenceKind.from_name("sigma-bar") is SequenceKind.SIGMA_BAR
    assert SequenceKind.from_name("SIGMA_BAR") is SequenceKind.SIGMA_BAR


def test_sigma_matches_brute_force_divisor_sums():
    f = seqgen.sigma_parity(3000)
    assert all(f[m] == sigma(m) % 2 for m in range(1, 3000))


@given(st.integers(1, 5000))
def test_sigma_odd_iff_odd_part_square(m):
    odd = m
    while odd % 2 == 0:
        odd //= 2
    assert seqgen.sigma_parity(m + 1)[m] == int(is_square(odd))


def test_sigma_oracle_matches_generator():
    for n in (1, 2, 3, 100, 4097, 1 << 16):
        assert seqgen.sigma_parity_oracle(n) == seqgen.sigma_parity(n)


def test_divisor_sieve_parity_small():
    par = seqgen.odd_divisor_count_parity(200)
    assert par[0] == 1
    assert [int(par[m]) for m in range(1, 200)] == [sigma(m) % 2 for m in range(1, 200)]


def test_partition_parity_matches_exact_counts():
    p = seqgen.generate(SequenceKind.PARTITION_PARITY, 300)
    exact = partitions(300)
    assert exact[:8] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert [p[m] for m in range(300)] == [x % 2 for x in exact]
    assert seqgen.partition_counts(300) == exact


def test_partition_oracle_matches_inverse():
    for n in (1, 2, 50, 1000):
        assert seqgen.partition_parity_oracle(n) == seqgen.generate("partitions", n)


def test_euler_product_gives_pentagonal():
    # prod (1 - q^m) = prod (1 + q^m) over GF(2)
    n = 3000
    assert seqgen.distinct_parts_product(n) == seqgen.generalized_pentagonal(n)


def test_product_power():
    n = 500
    g = seqgen.distinct_parts_product(n)
    assert seqgen.product_power(0, n) == f2ps.BitSeries.one(n)
    assert seqgen.product_power(3, n) == g * g * g
    assert seqgen.product_power(-1, n) * g == f2ps.BitSeries.one(n)


def test_reciprocal_kinds_are_mutual_inverses():
    n = 2048
    for a, b in seqgen.RECIPROCAL_KIND.items():
        assert seqgen.generate(a, n) * seqgen.generate(b, n) == f2ps.BitSeries.one(n)


def test_sigma_bar_at_10():
    assert seqgen.generate("sigma-bar", 10).indices() == [0, 1, 3, 7, 9]


def test_sigma_values_exact():
    s = seqgen.sigma_values(300)
    assert s[0] == 0
    assert s[1:] == [sigma(m) for m in range(1, 300)]


def test_pentagonal_recurrences_hold():
    p_out, s_out = seqgen.verify_pentagonal_recurrences(500)
    assert p_out.holds and s_out.holds
    assert p_out.identity == "PENTAGONAL_RECURRENCE_P"
    assert s_out.to_line() == "PENTAGONAL_RECURRENCE_SIGMA,500,PASS"


def test_pentagonal_recurrence_bound_validation():
    with pytest.raises(ValueError):
        seqgen.verify_pentagonal_recurrences(1)


def test_pentagonal_offsets_cover_generalized_values():
    lim = 1000
    expected = sorted({k * (3 * k - 1) // 2 for k in range(-40, 41)} & set(range(lim)))
    assert sorted(seqgen.pentagonal_offsets(lim)) == expected
