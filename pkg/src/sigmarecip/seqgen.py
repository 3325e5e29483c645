"""Generators for the named sets used throughout the package.

Every generator returns the GF(2) indicator series of its set truncated to
the requested precision.  Where a direct arithmetic construction exists it is
kept in a separate ``*_oracle`` function so the two can be compared.
"""

from __future__ import annotations

import enum
from math import isqrt

import numpy as np

from . import f2ps
from .clmul import array_to_bits
from .f2ps import BitSeries
from .outcome import VerificationOutcome


class SequenceKind(enum.Enum):
    SQUARES = "squares"
    ODD_SQUARES = "odd-squares"
    TRIANGULAR = "triangular"
    GEN_PENTAGONAL = "pentagonal"
    SIGMA_PARITY = "sigma"
    SIGMA_BAR = "sigma-bar"
    PARTITION_PARITY = "partitions"
    DISTINCT_PARTS_PRODUCT = "distinct-product"

    @classmethod
    def from_name(cls, name: str) -> "SequenceKind":
        for kind in cls:
            if name in (kind.value, kind.name):
                return kind
        raise ValueError(f"unknown sequence kind {name!r}")


def _check_precision(n: int) -> None:
    if n < 1:
        raise f2ps.PrecisionError("precision must be >= 1")


def squares(n: int) -> BitSeries:
    """Positive squares k^2, k >= 1."""
    return f2ps.from_indices((k * k for k in range(1, isqrt(n - 1) + 1)), n)


def odd_squares(n: int) -> BitSeries:
    return f2ps.from_indices((k * k for k in range(1, isqrt(n - 1) + 1, 2)), n)


def triangular(n: int) -> BitSeries:
    exps = []
    k = 0
    while k * (k + 1) // 2 < n:
        exps.append(k * (k + 1) // 2)
        k += 1
    return f2ps.from_indices(exps, n)


def pentagonal_offsets(limit: int) -> list[int]:
    """Generalized pentagonal numbers k(3k-1)/2, k = 0, 1, -1, 2, -2, ..., below ``limit``."""
    out = [0] if limit > 0 else []
    k = 1
    while k * (3 * k - 1) // 2 < limit:
        out.append(k * (3 * k - 1) // 2)
        if k * (3 * k + 1) // 2 < limit:
            out.append(k * (3 * k + 1) // 2)
        k += 1
    return out


def generalized_pentagonal(n: int) -> BitSeries:
    return f2ps.from_indices(pentagonal_offsets(n), n)


def sigma_parity(n: int) -> BitSeries:
    """Indicator of {0} together with every n of the form k^2 or 2k^2."""
    exps = [0]
    exps.extend(k * k for k in range(1, isqrt(n - 1) + 1))
    exps.extend(2 * k * k for k in range(1, isqrt((n - 1) // 2) + 1))
    return f2ps.from_indices(exps, n)


def distinct_parts_product(n: int) -> BitSeries:
    """Truncation of prod_{m>=1} (1 + q^m)."""
    _check_precision(n)
    mask = (1 << n) - 1
    x = 1
    for m in range(1, n):
        x ^= (x << m) & mask
    return BitSeries(n, x)


def product_power(k: int, n: int) -> BitSeries:
    """``prod_{m>=1} (1 + q^m) ** k`` truncated to ``n``; negative ``k`` inverts."""
    _check_precision(n)
    if k == 0:
        return BitSeries.one(n)
    g = f2ps.pow(distinct_parts_product(n), abs(k))
    return f2ps.inverse(g) if k < 0 else g


def generate(kind: SequenceKind | str, precision: int) -> BitSeries:
    if isinstance(kind, str):
        kind = SequenceKind.from_name(kind)
    _check_precision(precision)
    if kind is SequenceKind.SQUARES:
        return squares(precision)
    if kind is SequenceKind.ODD_SQUARES:
        return odd_squares(precision)
    if kind is SequenceKind.TRIANGULAR:
        return triangular(precision)
    if kind is SequenceKind.GEN_PENTAGONAL:
        return generalized_pentagonal(precision)
    if kind is SequenceKind.SIGMA_PARITY:
        return sigma_parity(precision)
    if kind is SequenceKind.SIGMA_BAR:
        return f2ps.inverse(sigma_parity(precision))
    if kind is SequenceKind.PARTITION_PARITY:
        return f2ps.inverse(generalized_pentagonal(precision))
    if kind is SequenceKind.DISTINCT_PARTS_PRODUCT:
        return distinct_parts_product(precision)
    raise ValueError(kind)  # pragma: no cover


#: Kinds whose reciprocal is also a named kind.
RECIPROCAL_KIND = {
    SequenceKind.SIGMA_PARITY: SequenceKind.SIGMA_BAR,
    SequenceKind.SIGMA_BAR: SequenceKind.SIGMA_PARITY,
    SequenceKind.GEN_PENTAGONAL: SequenceKind.PARTITION_PARITY,
    SequenceKind.PARTITION_PARITY: SequenceKind.GEN_PENTAGONAL,
}


# -- oracles -----------------------------------------------------------------


def odd_divisor_count_parity(n: int) -> np.ndarray:
    """uint8 array whose entry m (1 <= m < n) is sigma(m) mod 2; entry 0 is 1.

    Sieve over divisors: every divisor d of m adds d to sigma(m), and only
    odd d change the parity.  Small d walk their multiples directly; for
    large d the multiplier j is small, so the loop runs over j instead.
    """
    _check_precision(n)
    par = np.zeros(n, dtype=np.uint8)
    r = isqrt(n)
    for d in range(1, r + 1, 2):
        par[d::d] ^= 1
    first = r + 1 if (r + 1) % 2 else r + 2
    pending, size = [], 0
    j = 1
    while first * j < n:
        pending.append(np.arange(first, (n - 1) // j + 1, 2, dtype=np.int64) * j)
        size += pending[-1].size
        j += 1
        if size >= 4 * n or first * j >= n:
            counts = np.bincount(np.concatenate(pending), minlength=n)
            par ^= (counts & 1).astype(np.uint8)
            pending, size = [], 0
    par[0] = 1  # sigma(0) = 1 by convention
    return par


def sigma_parity_oracle(n: int) -> BitSeries:
    return BitSeries(n, array_to_bits(odd_divisor_count_parity(n)))


def partition_parity_oracle(n: int) -> BitSeries:
    """p(m) mod 2 for m < n by the coin-change recurrence over parts 1..n-1.

    Allowing part ``m`` multiplies the running series by
    ``1 + q^m + q^2m + ... = (1+q^m)(1+q^2m)(1+q^4m)...`` over GF(2).
    """
    _check_precision(n)
    mask = (1 << n) - 1
    x = 1
    for part in range(1, n):
        s = part
        while s < n:
            x ^= (x << s) & mask
            s <<= 1
    return BitSeries(n, x)


def partition_counts(n: int) -> list[int]:
    """Exact p(0..n-1)."""
    p = [0] * n
    p[0] = 1
    for part in range(1, n):
        for m in range(part, n):
            p[m] += p[m - part]
    return p


def sigma_values(n: int) -> list[int]:
    """Exact sigma(m) for 0 <= m < n, with sigma(0) = 0 as a placeholder."""
    s = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            s[m] += d
    return s


# -- recurrences -------------------------------------------------------------


def _signed_pentagonal(limit: int):
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        sign = 1 if k % 2 else -1
        yield sign, k * (3 * k - 1) // 2
        if k * (3 * k + 1) // 2 <= limit:
            yield sign, k * (3 * k + 1) // 2
        k += 1


def verify_pentagonal_recurrences(bound: int) -> tuple[VerificationOutcome, VerificationOutcome]:
    """Check Euler's recurrences for p(n) and sigma(n) on 1 <= n < bound.

    Both use the sign (-1)^(k-1) on the offset k(3k-1)/2, k = +-1, +-2, ...;
    in the sigma recurrence a term sigma(0) is read as n.
    """
    if bound < 2:
        raise ValueError("bound must be >= 2")
    p = partition_counts(bound)
    sig = sigma_values(bound)
    p_fail = s_fail = None
    for n in range(1, bound):
        ps = ss = 0
        for sign, g in _signed_pentagonal(n):
            ps += sign * p[n - g]
            ss += sign * (n if g == n else sig[n - g])
        if p_fail is None and ps != p[n]:
            p_fail = n
        if s_fail is None and ss != sig[n]:
            s_fail = n
    return (
        VerificationOutcome("PENTAGONAL_RECURRENCE_P", bound, p_fail is None, p_fail),
        VerificationOutcome("PENTAGONAL_RECURRENCE_SIGMA", bound, s_fail is None, s_fail),
    )
