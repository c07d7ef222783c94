"""Exception types shared across the package."""

from __future__ import annotations

from fractions import Fraction


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class DepthError(IndexError):
    """A sequence is too short for the requested difference or row.

    The message names the depth that would have been required.
    """

    def __init__(self, required: int, available: int):
        super().__init__(
            f"operation needs sequence depth >= {required}, have {available}"
        )
        self.required = required
        self.available = available


class CertificationError(InvalidInputError):
    """A precondition required a certified sequence and certification failed.

    Carries the failed certificate so callers can inspect the witness.
    """

    def __init__(self, message: str, certificate):
        super().__init__(f"{message}: witness {certificate.witness}")
        self.certificate = certificate


class NormalizationError(InvalidInputError):
    """Laplace exponent data is not normalized to phi(1) = 1.

    Carries the actual value of phi(1); rescaling drift and all jump
    weights by 1/factor normalizes the data.
    """

    def __init__(self, factor: Fraction):
        super().__init__(f"phi(1) = {factor} != 1; rescale drift and weights by {1 / factor}")
        self.factor = factor


class EnumerationCapError(RuntimeError):
    """Composition enumeration would exceed the configured cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(
            f"n={n} exceeds the enumeration cap {cap} "
            f"(2^(n-1) compositions; raise the cap to proceed)"
        )
        self.n = n
        self.cap = cap
