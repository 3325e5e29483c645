"""Exact integer arithmetic for the counting function ``c(n)``, the enumeration
of numbers with odd divisor sum, and six Beatty sequences built on sqrt(2).

No floating point is used: every floor of ``(a + b*sqrt(2)) / d`` is computed as
``(a + isqrt(2*b*b)) // d``.  This is exact for integers ``a``, ``d > 0`` and
``b >= 0`` because ``b*sqrt(2)`` is irrational for ``b > 0`` and
``floor((a + y) / d) = floor((a + floor(y)) / d)`` for real ``y``.

Closed forms used by :func:`beatty_term` (with ``x = 2k - 1``):

========  ====================================  ==========================
kind      definition                            integer form
========  ====================================  ==========================
w         floor((k - 1/2)(2 + sqrt 2))          (2x + isqrt(2x^2)) // 2
alpha     floor(k (2 + sqrt 2))                 2k + isqrt(2k^2)
beta      floor(k (2 + sqrt 2) / 2)             (2k + isqrt(2k^2)) // 2
gamma     floor((k - 1/2)(2 + 2 sqrt 2))        x + isqrt(2x^2)
delta     floor(k (2 + 2 sqrt 2))               2k + isqrt(8k^2)
epsilon   floor(k (1 + sqrt 2))                 k + isqrt(2k^2)
========  ====================================  ==========================
"""

from __future__ import annotations

import enum
import heapq
import itertools
from math import isqrt as _isqrt
from typing import Callable, Iterable, Iterator

from .outcome import VerificationOutcome

#: Largest ``k`` the documentation promises; Python ints make the bound soft.
MAX_K = 1 << 60


class BeattyKind(enum.Enum):
    W = "w"
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA_SEQ = "delta"
    EPSILON = "epsilon"

    @classmethod
    def from_name(cls, name: str) -> "BeattyKind":
        for kind in cls:
            if name in (kind.value, kind.name):
                return kind
        raise ValueError(f"unknown Beatty kind {name!r}")


#: OEIS entries for each kind.
OEIS_ID = {
    BeattyKind.W: "A001954",
    BeattyKind.ALPHA: "A001952",
    BeattyKind.BETA: "A003152",
    BeattyKind.GAMMA: "A215247",
    BeattyKind.DELTA_SEQ: "A197878",
    BeattyKind.EPSILON: "A003151",
}


class InsufficientOddValues(ValueError):
    pass


def isqrt(n: int) -> int:
    """``floor(sqrt(n))`` for a nonnegative integer."""
    return _isqrt(n)


def floor_sqrt2_affine(a: int, b: int, d: int = 1) -> int:
    """``floor((a + b*sqrt(2)) / d)`` for ``b >= 0`` and ``d > 0``."""
    if b < 0 or d <= 0:
        raise ValueError("need b >= 0 and d > 0")
    return (a + _isqrt(2 * b * b)) // d


def c_function(n: int) -> int:
    """Number of positive integers of the form k^2 or 2k^2 that are <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _isqrt(n) + _isqrt(n // 2)


def beatty_term(kind: BeattyKind | str, k: int) -> int:
    if isinstance(kind, str):
        kind = BeattyKind.from_name(kind)
    if k < 1:
        raise ValueError("k must be >= 1")
    x = 2 * k - 1
    if kind is BeattyKind.W:
        # (k - 1/2)(2 + sqrt 2) = (2x + x sqrt 2) / 2
        return floor_sqrt2_affine(2 * x, x, 2)
    if kind is BeattyKind.ALPHA:
        return floor_sqrt2_affine(2 * k, k)
    if kind is BeattyKind.BETA:
        return floor_sqrt2_affine(2 * k, k, 2)
    if kind is BeattyKind.GAMMA:
        return floor_sqrt2_affine(x, x)
    if kind is BeattyKind.DELTA_SEQ:
        return floor_sqrt2_affine(2 * k, 2 * k)
    if kind is BeattyKind.EPSILON:
        return floor_sqrt2_affine(k, k)
    raise ValueError(kind)  # pragma: no cover


def beatty_sequence(kind: BeattyKind | str, count: int) -> list[int]:
    return [beatty_term(kind, k) for k in range(1, count + 1)]


def w_from_counting(k: int) -> int:
    """``w_k`` as ``x + floor(x / sqrt 2)`` with ``x = 2k - 1``, i.e. ``c(x^2)``."""
    x = 2 * k - 1
    return x + _isqrt(x * x // 2)


def sigma_terms() -> Iterator[int]:
    """The positive integers k^2 and 2k^2 in increasing order (the streams never collide)."""
    squares = (k * k for k in itertools.count(1))
    twice = (2 * k * k for k in itertools.count(1))
    return heapq.merge(squares, twice)


def enumerate_sigma(count: int) -> list[int]:
    """First ``count`` positive integers with odd divisor sum."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return list(itertools.islice(sigma_terms(), count))


# Each item: (name, kind, target value of the enumerated term at the k-th index)
_PROP_ITEMS: list[tuple[str, BeattyKind, Callable[[int], int]]] = [
    ("BEATTY_I_ODD_SQUARES", BeattyKind.W, lambda k: (2 * k - 1) ** 2),
    ("BEATTY_II_EVEN_SQUARES", BeattyKind.ALPHA, lambda k: 4 * k * k),
    ("BEATTY_III_SQUARES", BeattyKind.BETA, lambda k: k * k),
    ("BEATTY_IV_TWICE_ODD_SQUARES", BeattyKind.GAMMA, lambda k: 2 * (2 * k - 1) ** 2),
    ("BEATTY_V_TWICE_EVEN_SQUARES", BeattyKind.DELTA_SEQ, lambda k: 8 * k * k),
    ("BEATTY_VI_TWICE_SQUARES", BeattyKind.EPSILON, lambda k: 2 * k * k),
]


def verify_beatty_props(bound: int) -> list[VerificationOutcome]:
    """For each k <= bound check that the Beatty index locates the expected term.

    The enumeration is produced by merging the two streams, independently of
    ``c(n)``; ``first_mismatch`` is the first failing ``k``.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    largest = max(beatty_term(kind, bound) for _, kind, _ in _PROP_ITEMS)
    terms = [0] + enumerate_sigma(largest)  # 1-based
    out = []
    for name, kind, target in _PROP_ITEMS:
        bad = None
        for k in range(1, bound + 1):
            if terms[beatty_term(kind, k)] != target(k):
                bad = k
                break
        out.append(VerificationOutcome(name, bound, bad is None, bad))
    return out


def verify_counting_inverse(count: int) -> VerificationOutcome:
    """``c(term_n) = n`` for the first ``count`` enumerated terms."""
    bad = None
    for n, t in enumerate(itertools.islice(sigma_terms(), count), 1):
        if c_function(t) != n:
            bad = n
            break
    return VerificationOutcome("COUNTING_INVERSE", count, bad is None, bad)


def l_operator(source: Iterable[int], count: int) -> list[int]:
    """Indices ``n >= 1`` at which ``source`` (read as f(1), f(2), ...) is odd.

    Returns the first ``count`` of them.
    """
    out: list[int] = []
    if count <= 0:
        return out
    for n, value in enumerate(source, 1):
        if value & 1:
            out.append(n)
            if len(out) == count:
                return out
    raise InsufficientOddValues(f"source exhausted after {len(out)} odd values; {count} requested")


def l_operator_finding(bound: int, sigma_parities: Iterable[int] | None = None) -> dict:
    """Compute ``L(L(sigma))`` for k <= bound and compare it termwise with ``w`` and ``c``.

    ``sigma_parities`` yields sigma(1), sigma(2), ... (or their parities).  By
    default a sieve up to ``(2*bound)^2`` is used; if that is too short for the
    requested number of terms, :class:`InsufficientOddValues` is raised.
    """
    if sigma_parities is None:
        from .seqgen import odd_divisor_count_parity

        sigma_parities = odd_divisor_count_parity((2 * bound) ** 2 + 2)[1:].tolist()
    values = list(sigma_parities)
    ell = l_operator(values, sum(v & 1 for v in values))
    ll = l_operator(ell, bound)
    w = [beatty_term(BeattyKind.W, k) for k in range(1, bound + 1)]
    c = [c_function(k) for k in range(1, bound + 1)]

    def first_diff(ref):
        return next((k for k in range(1, bound + 1) if ll[k - 1] != ref[k - 1]), None)

    return {
        "bound": bound,
        "l_l_sigma": ll,
        "matches_w": ll == w,
        "matches_c": ll == c,
        "first_mismatch_w": first_diff(w),
        "first_mismatch_c": first_diff(c),
    }
