"""Truncated formal power series over GF(2).

A :class:`BitSeries` knows the coefficients of ``q**0 .. q**(N-1)`` where
``N`` is its precision.  Coefficients are packed into a Python int (bit ``i``
is the coefficient of ``q**i``), so addition is ``^``, masking is ``&`` and a
raw equality check compares the packed words.  Binary operations return the
smaller of the two precisions.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import BinaryIO, Iterable, Sequence

import numpy as np

from . import clmul as _clmul
from .clmul import array_to_bits, bits_to_array

F2S1_MAGIC = b"F2S1"


class SeriesError(ValueError):
    """Base class for invalid series operations."""


class PrecisionError(SeriesError):
    pass


class OddExponentPresent(SeriesError):
    pass


class ZeroConstantTerm(SeriesError, ZeroDivisionError):
    pass


class StrideViolation(SeriesError):
    pass


class FormatError(SeriesError):
    pass


def _low_mask(n: int) -> int:
    return (1 << n) - 1


@lru_cache(maxsize=32)
def residue_mask(nbits: int, modulus: int, residue: int) -> int:
    """Int with bit ``i`` set for every ``i < nbits`` with ``i % modulus == residue``."""
    if modulus == 2:
        pattern = b"\x55" if residue == 0 else b"\xaa"
        return int.from_bytes(pattern * ((nbits + 7) // 8), "little") & _low_mask(nbits)
    arr = np.zeros(nbits, dtype=np.uint8)
    arr[residue::modulus] = 1
    return array_to_bits(arr)


# Byte -> 16-bit word with the byte's bits moved to even positions.
_SPREAD = np.zeros(256, dtype="<u2")
for _j in range(8):
    _SPREAD |= ((np.arange(256) >> _j) & 1).astype("<u2") << (2 * _j)
del _j


def spread_bits(x: int) -> int:
    """Move bit ``i`` of ``x`` to bit ``2i`` (i.e. ``f(q) -> f(q**2)``)."""
    if x == 0:
        return 0
    raw = np.frombuffer(x.to_bytes((x.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return int.from_bytes(_SPREAD[raw].tobytes(), "little")


@dataclass(frozen=True, slots=True)
class BitSeries:
    """Element of GF(2)[[q]] known modulo ``q**precision``."""

    precision: int
    bits: int = 0

    def __post_init__(self):
        if not isinstance(self.precision, int) or self.precision < 1:
            raise PrecisionError(f"precision must be a positive integer, got {self.precision!r}")
        if self.bits < 0:
            raise ValueError("bits must be nonnegative")
        if self.bits >> self.precision:
            object.__setattr__(self, "bits", self.bits & _low_mask(self.precision))

    @classmethod
    def one(cls, precision: int) -> "BitSeries":
        return cls(precision, 1)

    @classmethod
    def zero(cls, precision: int) -> "BitSeries":
        return cls(precision, 0)

    @classmethod
    def monomial(cls, exponent: int, precision: int) -> "BitSeries":
        return cls(precision, 1 << exponent if exponent < precision else 0)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.precision:
            raise IndexError(f"coefficient {i} outside precision {self.precision}")
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.precision

    @property
    def weight(self) -> int:
        """Number of nonzero coefficients."""
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def indices(self) -> list[int]:
        return to_indices(self)

    def __add__(self, other: "BitSeries") -> "BitSeries":
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "BitSeries") -> "BitSeries":
        return mul(self, other)

    def __pow__(self, k: int) -> "BitSeries":
        if k < 0:
            return pow(inverse(self), -k)
        return pow(self, k)

    def __truediv__(self, other: "BitSeries") -> "BitSeries":
        return mul(self, inverse(other))

    def __repr__(self) -> str:
        idx = []
        x = self.bits
        while x and len(idx) < 8:
            low = (x & -x).bit_length() - 1
            idx.append(low)
            x &= x - 1
        tail = ", ..." if x else ""
        return f"BitSeries(precision={self.precision}, exponents=[{', '.join(map(str, idx))}{tail}])"


def from_indices(exponents: Iterable[int], precision: int) -> BitSeries:
    """Indicator series of ``exponents``; exponents >= precision are dropped."""
    if precision < 1:
        raise PrecisionError("precision must be >= 1")
    arr = np.asarray(list(exponents), dtype=np.int64)
    if arr.size and arr.min() < 0:
        raise ValueError("exponents must be nonnegative")
    arr = arr[arr < precision]
    dense = np.zeros(precision, dtype=np.uint8)
    dense[arr] = 1
    return BitSeries(precision, array_to_bits(dense))


def to_indices(f: BitSeries) -> list[int]:
    if f.bits == 0:
        return []
    return np.flatnonzero(bits_to_array(f.bits, f.precision)).tolist()


def truncate(f: BitSeries, precision: int) -> BitSeries:
    if precision > f.precision:
        raise PrecisionError(f"cannot extend precision {f.precision} to {precision}")
    return BitSeries(precision, f.bits)


def add(f: BitSeries, g: BitSeries) -> BitSeries:
    return BitSeries(min(f.precision, g.precision), f.bits ^ g.bits)


def mul(f: BitSeries, g: BitSeries, method: str | None = None) -> BitSeries:
    n = min(f.precision, g.precision)
    m = _low_mask(n)
    return BitSeries(n, _clmul.clmul(f.bits & m, g.bits & m, method) & m)


def monomial_mul(f: BitSeries, exponent: int) -> BitSeries:
    """Multiply by ``q**exponent`` keeping the precision of ``f``."""
    return BitSeries(f.precision, f.bits << exponent)


def square(f: BitSeries) -> BitSeries:
    # f(q)^2 = f(q^2) in characteristic 2
    half = _low_mask((f.precision + 1) // 2)
    return BitSeries(f.precision, spread_bits(f.bits & half))


def sqrt_even(f: BitSeries) -> BitSeries:
    """Inverse of :func:`square` on series supported on even exponents."""
    odd = f.bits & residue_mask(f.precision, 2, 1)
    if odd:
        e = (odd & -odd).bit_length() - 1
        raise OddExponentPresent(f"coefficient of q^{e} is nonzero")
    n = (f.precision + 1) // 2
    return BitSeries(n, array_to_bits(bits_to_array(f.bits, f.precision)[::2]))


def pow(f: BitSeries, k: int) -> BitSeries:
    if k < 0:
        raise ValueError("use inverse() for negative powers")
    result = BitSeries.one(f.precision)
    base = f
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = square(base)
    return result


def even_part(f: BitSeries) -> BitSeries:
    return BitSeries(f.precision, f.bits & residue_mask(f.precision, 2, 0))


def odd_part(f: BitSeries) -> BitSeries:
    return BitSeries(f.precision, f.bits & residue_mask(f.precision, 2, 1))


def derivative(f: BitSeries) -> BitSeries:
    """Formal derivative: ``q**n -> q**(n-1)`` for odd ``n``, even ``n`` vanish."""
    if f.precision < 2:
        raise PrecisionError("derivative of a precision-1 series has no coefficients")
    return BitSeries(f.precision - 1, odd_part(f).bits >> 1)


def residue_extract(f: BitSeries, m: int, k: int) -> BitSeries:
    """Keep the coefficients at exponents congruent to ``k`` modulo ``m``."""
    if m < 1 or not 0 <= k < m:
        raise ValueError(f"residue {k} is not in [0, {m})")
    return BitSeries(f.precision, f.bits & residue_mask(f.precision, m, k))


def downshift_decimate(f: BitSeries, shift: int, stride: int) -> BitSeries:
    """Map ``q**(shift + stride*j)`` to ``q**j``.

    Every nonzero exponent of ``f`` must be congruent to ``shift`` modulo
    ``stride``; this recovers ``V`` from ``q**shift * V(q**stride)``.
    """
    if stride < 1 or shift < 0:
        raise ValueError("stride must be >= 1 and shift >= 0")
    if shift >= f.precision:
        raise PrecisionError("shift leaves no coefficients")
    stray = f.bits & ~residue_mask(f.precision, stride, shift % stride)
    if stray or f.bits & _low_mask(shift):
        bad = stray or (f.bits & _low_mask(shift))
        e = (bad & -bad).bit_length() - 1
        raise StrideViolation(f"exponent {e} is not {shift} mod {stride}")
    n = -(-(f.precision - shift) // stride)
    picked = bits_to_array(f.bits, f.precision)[shift::stride]
    return BitSeries(n, array_to_bits(picked))


def inverse(f: BitSeries, method: str | None = None) -> BitSeries:
    """Reciprocal in GF(2)[[q]] by Newton iteration.

    Over GF(2) the Newton step ``g <- 2g - f g^2`` is just ``g <- f g^2``,
    and each step doubles the number of correct coefficients.  Writing
    ``f = A(q^2) + q B(q^2)`` and ``g^2 = G(q^2)`` turns the update into two
    half-length products ``A*G`` and ``B*G``.
    """
    if not f.bits & 1:
        raise ZeroConstantTerm("series with zero constant term has no inverse")
    n = f.precision
    f_arr = bits_to_array(f.bits, n)
    f_even = array_to_bits(f_arr[0::2])
    f_odd = array_to_bits(f_arr[1::2])
    g, prec = 1, 1
    while prec < n:
        new = min(2 * prec, n)
        ne, no = (new + 1) // 2, new // 2
        a = f_even & _low_mask(ne)
        b = f_odd & _low_mask(no)
        ag = _clmul.clmul(a, g, method) & _low_mask(ne)
        bg = _clmul.clmul(b, g, method) & _low_mask(no)
        g = spread_bits(ag) ^ (spread_bits(bg) << 1)
        prec = new
    return BitSeries(n, g)


def inverse_oracle(f: BitSeries) -> BitSeries:
    """Reciprocal via the defining recurrence ``b_n = sum_{a in F, 1<=a<=n} b_{n-a}``.

    Quadratic; kept as the reference that :func:`inverse` is checked against.
    """
    if not f.bits & 1:
        raise ZeroConstantTerm("series with zero constant term has no inverse")
    tail = f.bits & ~1
    # bit a of ``window`` holds b_{n-a}
    window = 0
    out = 0
    for n in range(f.precision):
        bn = 1 if n == 0 else (tail & window).bit_count() & 1
        out |= bn << n
        window = (window | bn) << 1
    return BitSeries(f.precision, out)


# -- serialization ---------------------------------------------------------


def to_f2s1_bytes(f: BitSeries) -> bytes:
    nwords = (f.precision + 63) // 64
    return F2S1_MAGIC + struct.pack("<Q", f.precision) + f.bits.to_bytes(8 * nwords, "little")


def from_f2s1_bytes(data: bytes) -> BitSeries:
    if data[:4] != F2S1_MAGIC:
        raise FormatError("missing F2S1 magic")
    if len(data) < 12:
        raise FormatError("truncated F2S1 header")
    (precision,) = struct.unpack("<Q", data[4:12])
    nwords = (precision + 63) // 64
    payload = data[12:]
    if len(payload) != 8 * nwords:
        raise FormatError(f"expected {8 * nwords} payload bytes, found {len(payload)}")
    bits = int.from_bytes(payload, "little")
    if bits >> precision:
        raise FormatError("nonzero padding bits beyond precision")
    return BitSeries(precision, bits)


def write_f2s1(f: BitSeries, fp: BinaryIO) -> None:
    fp.write(to_f2s1_bytes(f))


def read_f2s1(fp: BinaryIO) -> BitSeries:
    return from_f2s1_bytes(fp.read())


def format_indices(exponents: Sequence[int], header: str | None = None) -> str:
    buf = io.StringIO()
    if header:
        for line in header.splitlines():
            buf.write(f"# {line}\n")
    for e in exponents:
        buf.write(f"{e}\n")
    return buf.getvalue()


def parse_indices(text: str) -> list[int]:
    """Parse the one-exponent-per-line text format (``#`` starts a comment)."""
    out: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            e = int(line)
        except ValueError:
            raise FormatError(f"line {lineno}: not an integer: {line!r}") from None
        if e < 0 or (out and e <= out[-1]):
            raise FormatError(f"line {lineno}: exponents must be nonnegative and strictly increasing")
        out.append(e)
    return out
