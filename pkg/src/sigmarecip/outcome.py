"""Result record shared by every verifier in the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationOutcome:
    """Outcome of one check at one precision or bound.

    ``first_mismatch`` is the smallest exponent (or index) at which the two
    sides differ, and is ``None`` exactly when the check holds.
    """

    identity: str
    precision: int
    holds: bool
    first_mismatch: int | None = None

    def __post_init__(self):
        if self.holds != (self.first_mismatch is None):
            raise ValueError("holds must be True exactly when first_mismatch is None")

    @classmethod
    def compare(cls, identity: str, precision: int, lhs: int, rhs: int) -> "VerificationOutcome":
        """Build an outcome from two packed coefficient ints."""
        diff = lhs ^ rhs
        if not diff:
            return cls(identity, precision, True)
        return cls(identity, precision, False, (diff & -diff).bit_length() - 1)

    def to_line(self) -> str:
        status = "PASS" if self.holds else "FAIL"
        line = f"{self.identity},{self.precision},{status}"
        if self.first_mismatch is not None:
            line += f",{self.first_mismatch}"
        return line
