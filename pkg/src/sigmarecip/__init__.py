"""Binary power series tools for the sum-of-divisors parity set and its reciprocal."""

from .f2ps import (
    BitSeries,
    add,
    derivative,
    downshift_decimate,
    even_part,
    from_indices,
    inverse,
    inverse_oracle,
    mul,
    odd_part,
    pow,
    residue_extract,
    sqrt_even,
    square,
    to_indices,
)
from .outcome import VerificationOutcome
from .seqgen import SequenceKind, generate

__version__ = "0.1.0"
