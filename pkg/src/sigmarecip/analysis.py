"""Identity catalog for the sum-of-divisors parity series and its reciprocal,
plus the density engine.

Notation used in the code:

* ``sigma``      -- indicator of {0} and every n whose divisor sum is odd
* ``sigma_bar``  -- its reciprocal in GF(2)[[q]]
* ``D``          -- odd squares, ``S`` -- positive squares
* ``delta``      -- triangular numbers, ``delta_e`` its even part
* ``G``          -- prod (1 + q^n)

Each identity is evaluated on both sides at a finite precision ``N``.  Infinite
sums are cut at the first term whose lowest exponent is already >= ``N``.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt

import numpy as np

from . import f2ps, seqgen
from .clmul import array_to_bits
from .f2ps import BitSeries
from .outcome import VerificationOutcome

MIN_PRECISION = 16

#: The odd exponents for which the ``sigma * G^k = (G^k)_e`` identity is checked by default.
DEFAULT_T12_EXPONENTS = (1, 3, 5, -1)


class IdentityId(enum.Enum):
    L3_SIGMA_DECOMP = "L3_SIGMA_DECOMP"
    L4_S_FROM_D = "L4_S_FROM_D"
    C1_SIGMA_FROM_D = "C1_SIGMA_FROM_D"
    L5_SIGMABAR_SERIES = "L5_SIGMABAR_SERIES"
    L9_SUBSETS = "L9_SUBSETS"
    L10_I_TAIL = "L10_I_TAIL"
    L10_II_QDELTA8 = "L10_II_QDELTA8"
    T11_TRIPLE_PRODUCT = "T11_TRIPLE_PRODUCT"
    T12_GK_EVEN = "T12_GK_EVEN"
    C13_DELTA_FRACTION = "C13_DELTA_FRACTION"
    T16_FINAL_EQUATION = "T16_FINAL_EQUATION"
    EQK_V_IDENTITY = "EQK_V_IDENTITY"
    T19_MOD16_VANISHING = "T19_MOD16_VANISHING"
    SIGMA3_SQUARE_PLUS_TWICE_SQUARE = "SIGMA3_SQUARE_PLUS_TWICE_SQUARE"


class EvenKRequested(ValueError):
    pass


class SeriesBook:
    """Lazily built series shared by all identity checks at one precision."""

    def __init__(self, precision: int):
        if precision < 1:
            raise f2ps.PrecisionError("precision must be >= 1")
        self.precision = precision
        self._product_powers: dict[int, BitSeries] = {}

    @cached_property
    def one(self) -> BitSeries:
        return BitSeries.one(self.precision)

    @cached_property
    def sigma(self) -> BitSeries:
        return seqgen.sigma_parity(self.precision)

    @cached_property
    def sigma_bar(self) -> BitSeries:
        return f2ps.inverse(self.sigma)

    @cached_property
    def S(self) -> BitSeries:
        return seqgen.squares(self.precision)

    @cached_property
    def D(self) -> BitSeries:
        return seqgen.odd_squares(self.precision)

    @cached_property
    def delta(self) -> BitSeries:
        return seqgen.triangular(self.precision)

    @cached_property
    def G(self) -> BitSeries:
        return seqgen.distinct_parts_product(self.precision)

    def G_power(self, k: int) -> BitSeries:
        if k not in self._product_powers:
            if k == 0:
                g = self.one
            else:
                g = f2ps.pow(self.G, abs(k))
                if k < 0:
                    g = f2ps.inverse(g)
            self._product_powers[k] = g
        return self._product_powers[k]

    @cached_property
    def T(self) -> BitSeries:
        """``delta^4 / sqrt(delta_e)``, built at precision 2N so the square root keeps N terms."""
        wide = seqgen.triangular(2 * self.precision)
        root = f2ps.sqrt_even(f2ps.even_part(wide))
        quarter = f2ps.truncate(f2ps.pow(self.delta, 4), self.precision)
        return f2ps.mul(quarter, f2ps.inverse(root))

    @cached_property
    def V(self) -> BitSeries:
        """The series with ``sigma_bar`` restricted to 7 mod 8 equal to ``q^7 V(q^8)``."""
        return f2ps.downshift_decimate(f2ps.residue_extract(self.sigma_bar, 8, 7), 7, 8)

    def D_power_tail(self, exponents) -> BitSeries:
        """Sum of ``D^e`` over the increasing ``exponents`` while ``e < N``."""
        acc = BitSeries.zero(self.precision)
        for e in exponents:
            if e >= self.precision:
                break
            acc = acc + f2ps.pow(self.D, e)
        return acc

    def mersenne_tail(self, start: int) -> BitSeries:
        """``sum_{n >= start} D^(2^n - 1)``, using ``D^(2^(n+1)-1) = D^(2^n-1) * D^(2^n)``."""
        acc = BitSeries.zero(self.precision)
        term = self.one
        d_pow = self.D  # D^(2^n)
        n = 0
        while (1 << n) - 1 < self.precision:
            if n >= start:
                acc = acc + term
            term = f2ps.mul(term, d_pow)
            d_pow = f2ps.square(d_pow)
            n += 1
        return acc


def _powers_of(base: int, limit: int):
    e = 1
    while e < limit:
        yield e
        e *= base


def _check_l3(book: SeriesBook) -> tuple[BitSeries, BitSeries]:
    return book.sigma, book.one + book.S + f2ps.square(book.S)


def _check_l4(book: SeriesBook):
    return book.S, book.D_power_tail(_powers_of(4, book.precision))


def _check_c1(book: SeriesBook):
    return book.sigma, book.one + book.D_power_tail(_powers_of(2, book.precision))


def _check_l5(book: SeriesBook):
    return book.sigma_bar, book.mersenne_tail(0)


def _check_l9(book: SeriesBook):
    # Class by class; the expected series must also live entirely in its class,
    # and the classes 2, 4, 5, 6 must be empty.
    n = book.precision
    expected = {
        0: book.one,
        1: book.D,
        3: f2ps.pow(book.D, 3),
        7: book.mersenne_tail(3),
    }
    diff = 0
    for k in range(8):
        got = f2ps.residue_extract(book.sigma_bar, 8, k).bits
        diff |= got ^ expected.get(k, BitSeries.zero(n)).bits
    return BitSeries(n, diff), BitSeries.zero(n)


def _check_l10_i(book: SeriesBook):
    lhs = book.sigma_bar + book.one + book.D + f2ps.pow(book.D, 3)
    rhs = f2ps.mul(f2ps.pow(book.D, 7), f2ps.pow(book.sigma_bar, 8))
    return lhs, rhs


def _check_l10_ii(book: SeriesBook):
    return f2ps.monomial_mul(f2ps.pow(book.delta, 8), 1), book.D


def _check_t11(book: SeriesBook):
    return book.delta, book.G_power(3)


def _check_t12(book: SeriesBook, k: int):
    gk = book.G_power(k)
    return f2ps.mul(book.sigma, gk), f2ps.even_part(gk)


def _check_c13(book: SeriesBook):
    return book.sigma_bar, f2ps.mul(book.delta, f2ps.inverse(f2ps.even_part(book.delta)))


def _check_t16(book: SeriesBook):
    lhs = f2ps.residue_extract(book.sigma_bar, 8, 7)
    rhs = f2ps.monomial_mul(f2ps.pow(book.T, 16), 7)
    return lhs, rhs


def _check_eqk(book: SeriesBook):
    v = book.V
    rhs = f2ps.mul(f2ps.pow(book.delta, 7), book.sigma_bar)
    return v, f2ps.truncate(rhs, v.precision)


def _check_t19(book: SeriesBook):
    return f2ps.residue_extract(book.sigma_bar, 16, 15), BitSeries.zero(book.precision)


def square_plus_twice_square_parity(n: int) -> np.ndarray:
    """Entry m is the parity of #{(a, b) : a, b >= 1, a^2 + 2 b^2 = m}, for m < n."""
    counts = np.zeros(n, dtype=np.int64)
    a = np.arange(1, isqrt(n) + 2, dtype=np.int64)
    b = 1
    while 2 * b * b + 1 < n:
        vals = a * a + 2 * b * b
        vals = vals[vals < n]
        counts[vals] += 1
        b += 1
    return (counts & 1).astype(np.uint8)


def _check_sigma3(book: SeriesBook):
    # For m = 3 mod 8 any representation a^2 + 2b^2 forces a and b odd.
    n = book.precision
    reps = BitSeries(n, array_to_bits(square_plus_twice_square_parity(n)))
    return f2ps.residue_extract(book.sigma_bar, 8, 3), f2ps.residue_extract(reps, 8, 3)


_CHECKS = {
    IdentityId.L3_SIGMA_DECOMP: _check_l3,
    IdentityId.L4_S_FROM_D: _check_l4,
    IdentityId.C1_SIGMA_FROM_D: _check_c1,
    IdentityId.L5_SIGMABAR_SERIES: _check_l5,
    IdentityId.L9_SUBSETS: _check_l9,
    IdentityId.L10_I_TAIL: _check_l10_i,
    IdentityId.L10_II_QDELTA8: _check_l10_ii,
    IdentityId.T11_TRIPLE_PRODUCT: _check_t11,
    IdentityId.C13_DELTA_FRACTION: _check_c13,
    IdentityId.T16_FINAL_EQUATION: _check_t16,
    IdentityId.EQK_V_IDENTITY: _check_eqk,
    IdentityId.T19_MOD16_VANISHING: _check_t19,
    IdentityId.SIGMA3_SQUARE_PLUS_TWICE_SQUARE: _check_sigma3,
}


def identity_label(identity: IdentityId, k: int | None = None) -> str:
    if identity is IdentityId.T12_GK_EVEN:
        return f"{identity.value}[k={k}]"
    return identity.value


def verify(
    identity: IdentityId | str,
    precision: int,
    k: int | None = None,
    book: SeriesBook | None = None,
) -> VerificationOutcome:
    """Evaluate both sides of ``identity`` modulo ``q**precision``.

    ``k`` is the (odd) exponent for ``T12_GK_EVEN``; pass a shared ``book``
    to reuse series across several checks at the same precision.
    """
    if isinstance(identity, str):
        identity = IdentityId(identity)
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}")
    if book is None:
        book = SeriesBook(precision)
    elif book.precision != precision:
        raise ValueError("series book precision does not match")
    if identity is IdentityId.T12_GK_EVEN:
        if k is None:
            k = 3
        if k % 2 == 0:
            raise EvenKRequested(f"the identity needs odd k, got {k}")
        lhs, rhs = _check_t12(book, k)
    else:
        lhs, rhs = _CHECKS[identity](book)
    return VerificationOutcome.compare(identity_label(identity, k), precision, lhs.bits, rhs.bits)


def catalog(t12_exponents=DEFAULT_T12_EXPONENTS) -> list[tuple[IdentityId, int | None]]:
    """Every identity in catalog order, with T12 expanded over ``t12_exponents``."""
    out: list[tuple[IdentityId, int | None]] = []
    for ident in IdentityId:
        if ident is IdentityId.T12_GK_EVEN:
            out.extend((ident, k) for k in t12_exponents)
        else:
            out.append((ident, None))
    return out


def verify_all(precision: int, t12_exponents=DEFAULT_T12_EXPONENTS) -> list[VerificationOutcome]:
    book = SeriesBook(precision)
    return [verify(ident, precision, k=k, book=book) for ident, k in catalog(t12_exponents)]


# -- density -----------------------------------------------------------------


@dataclass
class DensityReport:
    checkpoints: list[int]
    counts: list[int]
    densities: list[float]
    modulus: int = 1
    per_residue: list[list[int]] = field(default_factory=list)

    def class_density(self, index: int, residue: int) -> float:
        """Relative density contributed by one residue class at checkpoint ``index``."""
        return self.per_residue[index][residue] / (self.checkpoints[index] + 1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count", "density"] + [f"class{r}" for r in range(self.modulus)])
        for i, n in enumerate(self.checkpoints):
            w.writerow([n, self.counts[i], repr(self.densities[i])] + list(self.per_residue[i]))
        return buf.getvalue()


def default_checkpoints(precision: int) -> list[int]:
    """``2^j - 1`` for j >= 1 while below the precision, ending with ``precision - 1``."""
    pts = []
    j = 1
    while (1 << j) - 1 < precision:
        pts.append((1 << j) - 1)
        j += 1
    if not pts or pts[-1] != precision - 1:
        pts.append(precision - 1)
    return pts


def density_report(f: BitSeries, residue_modulus: int = 8, checkpoints=None) -> DensityReport:
    """Exact counts of ``F & [0, n]`` at each checkpoint, overall and per residue class."""
    if residue_modulus < 1:
        raise ValueError("residue modulus must be >= 1")
    if checkpoints is None:
        checkpoints = default_checkpoints(f.precision)
    checkpoints = sorted(int(n) for n in checkpoints)
    for n in checkpoints:
        if not 0 <= n < f.precision:
            raise f2ps.PrecisionError(f"checkpoint {n} outside precision {f.precision}")
    classes = [f.bits & f2ps.residue_mask(f.precision, residue_modulus, r) for r in range(residue_modulus)]
    counts, dens, per = [], [], []
    for n in checkpoints:
        low = (1 << (n + 1)) - 1
        row = [(c & low).bit_count() for c in classes]
        total = sum(row)
        counts.append(total)
        dens.append(total / (n + 1))
        per.append(row)
    return DensityReport(checkpoints, counts, dens, residue_modulus, per)


def sigma_density_closed_form(n: int) -> tuple[int, int]:
    """Numerator and denominator of ``(1 + isqrt(n) + isqrt(n/2)) / (n + 1)``."""
    return 1 + isqrt(n) + isqrt(n // 2), n + 1


# -- the 3 mod 8 class ---------------------------------------------------------


def _smallest_prime_factors(n: int) -> np.ndarray:
    spf = np.arange(n, dtype=np.int64)
    for p in range(2, isqrt(n - 1) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.copyto(block, p, where=block == np.arange(p * p, n, p))
    return spf


def in_sigma3_family(m: int, spf) -> bool:
    """Whether ``m = p^e k^2`` with p prime, p = 3 mod 8, e = 1 mod 4, k odd, p not dividing k."""
    if m < 3 or m % 2 == 0:
        return False
    odd_exponent_primes = []
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            odd_exponent_primes.append((p, e))
    if len(odd_exponent_primes) != 1:
        return False
    p, e = odd_exponent_primes[0]
    return p % 8 == 3 and e % 4 == 1


def sigma3_characterization_check(bound: int, sigma_bar: BitSeries | None = None) -> VerificationOutcome:
    """Compare the 3 mod 8 part of ``sigma_bar`` with the prime-power family below ``bound``."""
    if not 1 <= bound <= 10**6 + 1:
        raise ValueError("bound must be in [1, 10^6 + 1]")
    if sigma_bar is None:
        sigma_bar = seqgen.generate(seqgen.SequenceKind.SIGMA_BAR, bound)
    elif sigma_bar.precision < bound:
        raise f2ps.PrecisionError("sigma_bar precision below bound")
    spf = _smallest_prime_factors(max(bound, 2))
    lhs = f2ps.residue_extract(f2ps.truncate(sigma_bar, bound), 8, 3).bits
    rhs = 0
    for m in range(3, bound, 8):
        if in_sigma3_family(m, spf):
            rhs |= 1 << m
    return VerificationOutcome.compare("SIGMA3_PRIME_POWER_FAMILY", bound, lhs, rhs)


# -- random reciprocals ----------------------------------------------------------


def random_reciprocal_experiment(trials: int, inclusion_probability: float, precision: int, seed: int) -> list[float]:
    """Densities ``delta(B, N-1)`` of reciprocals of random sets containing 0."""
    if not 0 < inclusion_probability < 1:
        raise ValueError("inclusion probability must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        arr = (rng.random(precision) < inclusion_probability).astype(np.uint8)
        arr[0] = 1
        g = f2ps.inverse(BitSeries(precision, array_to_bits(arr)))
        out.append(g.weight / precision)
    return out
