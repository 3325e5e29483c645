"""Carryless (GF(2)[x]) multiplication of polynomials packed into Python ints.

Bit ``i`` of an int is the coefficient of ``x**i``.  Three kernels are
provided and all of them agree bit for bit:

* :func:`clmul_schoolbook` -- 4-bit windowed shift/xor, quadratic.
* :func:`clmul_karatsuba` -- three-way split down to the schoolbook kernel.
* :func:`clmul_kronecker` -- Kronecker substitution: every coefficient is
  placed in its own integer slot, the two big integers are multiplied by GMP
  and the parity of each slot is read back.

:func:`clmul` dispatches between them by operand size.
"""

import numpy as np

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

WORD_BITS = 64

#: Operands at or below this many 64-bit words use the schoolbook kernel.
THRESHOLD_WORDS = 64

#: Default strategy above the threshold: "kronecker" or "karatsuba".
DEFAULT_METHOD = "kronecker"


def bits_to_array(x, nbits):
    """Unpack the low ``nbits`` bits of ``x`` into a uint8 0/1 array."""
    nbytes = (nbits + 7) // 8
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:nbits]


def array_to_bits(arr):
    """Pack a 0/1 array (index = exponent) back into an int."""
    packed = np.packbits(np.asarray(arr, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def clmul_schoolbook(a, b):
    if a == 0 or b == 0:
        return 0
    if a.bit_length() < b.bit_length():
        a, b = b, a
    table = [0] * 16
    table[1] = a
    for u in range(2, 16):
        table[u] = (table[u >> 1] << 1) ^ (a if u & 1 else 0)
    r = 0
    # Horner over the hex digits of the shorter operand, most significant first.
    for digit in format(b, "x"):
        r = (r << 4) ^ table[int(digit, 16)]
    return r


def clmul_karatsuba(a, b, threshold_words=None):
    if threshold_words is None:
        threshold_words = THRESHOLD_WORDS
    return _karatsuba(a, b, max(1, threshold_words) * WORD_BITS)


def _karatsuba(a, b, threshold_bits):
    la, lb = a.bit_length(), b.bit_length()
    if min(la, lb) <= threshold_bits:
        return clmul_schoolbook(a, b)
    # split on a word boundary near the middle of the longer operand
    h = ((max(la, lb) + 2 * WORD_BITS - 1) // (2 * WORD_BITS)) * WORD_BITS
    mask = (1 << h) - 1
    a0, a1 = a & mask, a >> h
    b0, b1 = b & mask, b >> h
    z0 = _karatsuba(a0, b0, threshold_bits)
    z2 = _karatsuba(a1, b1, threshold_bits)
    z1 = _karatsuba(a0 ^ a1, b0 ^ b1, threshold_bits) ^ z0 ^ z2
    return z0 ^ (z1 << h) ^ (z2 << (2 * h))


def _slot_dtype(max_coefficient):
    for dt in (np.uint8, np.uint16, np.uint32, np.uint64):
        if max_coefficient < np.iinfo(dt).max:
            return np.dtype(dt).newbyteorder("<")
    raise OverflowError("operands too long for 64-bit Kronecker slots")


def _spread(x, nbits, dtype):
    slots = bits_to_array(x, nbits).astype(dtype)
    return int.from_bytes(slots.tobytes(), "little")


def clmul_kronecker(a, b):
    if a == 0 or b == 0:
        return 0
    la, lb = a.bit_length(), b.bit_length()
    # every integer coefficient of the product is at most the smaller weight
    dtype = _slot_dtype(min(a.bit_count(), b.bit_count()))
    A, B = _spread(a, la, dtype), _spread(b, lb, dtype)
    nslots = la + lb - 1
    if gmpy2 is not None:
        raw = gmpy2.to_binary(gmpy2.mpz(A) * gmpy2.mpz(B))[2:]
    else:
        prod = A * B
        raw = prod.to_bytes((prod.bit_length() + 7) // 8, "little")
    width = nslots * dtype.itemsize
    if len(raw) < width:
        raw = raw + bytes(width - len(raw))
    slots = np.frombuffer(raw, dtype=dtype, count=nslots)
    return array_to_bits((slots & 1).astype(np.uint8))


def clmul(a, b, method=None):
    """Carryless product of ``a`` and ``b``.

    ``method`` is one of ``"schoolbook"``, ``"karatsuba"``, ``"kronecker"``
    or ``None`` (size-based dispatch using :data:`THRESHOLD_WORDS` and
    :data:`DEFAULT_METHOD`).
    """
    if method is None:
        if min(a.bit_length(), b.bit_length()) <= THRESHOLD_WORDS * WORD_BITS:
            return clmul_schoolbook(a, b)
        method = DEFAULT_METHOD
    if method == "schoolbook":
        return clmul_schoolbook(a, b)
    if method == "karatsuba":
        return clmul_karatsuba(a, b)
    if method == "kronecker":
        return clmul_kronecker(a, b)
    raise ValueError(f"unknown multiplication method {method!r}")
