"""Exact finite-difference calculus on rational sequences.

Difference convention used everywhere in this package:

    nabla c(n) = c(n) - c(n+1)

(the negative of the usual forward difference).  With this sign, the
iterated differences of a moment sequence c(n) = integral of x^n dF are
nabla^j c(n) = integral of x^n (1-x)^j dF >= 0, which is why "completely
monotone" below means nonnegative differences of every order.

All arithmetic in this module is exact rational (fractions.Fraction);
floats are rejected on input.  Certificates are statements about a finite
prefix only: "certified-to-depth N" checks every inequality reachable
within depth N and claims nothing beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional

from .errors import DepthError, InvalidInputError

CERTIFIED = "certified-to-depth"
VIOLATED = "violated"


def to_fraction(value) -> Fraction:
    """Coerce int/Fraction/str (\"p/q\" or \"p\") to Fraction, rejecting floats."""
    if isinstance(value, bool):
        raise InvalidInputError("bool is not a rational scalar")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            error = InvalidInputError(f"malformed rational {value!r}")
            error.token = value  # lets the CLI report line/column
            raise error from exc
    if isinstance(value, float):
        raise InvalidInputError(
            f"float {value!r} rejected: this module is exact-rational only"
        )
    raise InvalidInputError(f"cannot interpret {value!r} as a rational scalar")


@dataclass(frozen=True)
class FiniteSequence:
    """Finite prefix (c(0), ..., c(N)) of a real sequence; depth = N."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        vals = tuple(to_fraction(v) for v in values)
        if not vals:
            raise InvalidInputError("a sequence needs at least one entry")
        object.__setattr__(self, "values", vals)

    @property
    def depth(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def prefix(self, depth: int) -> "FiniteSequence":
        """The truncation (c(0), ..., c(depth))."""
        if depth < 0 or depth > self.depth:
            raise DepthError(depth, self.depth)
        return FiniteSequence(self.values[: depth + 1])

    @classmethod
    def constant(cls, value, depth: int) -> "FiniteSequence":
        return cls([value] * (depth + 1))

    @classmethod
    def from_function(cls, fn, depth: int) -> "FiniteSequence":
        return cls([fn(n) for n in range(depth + 1)])


@dataclass(frozen=True)
class TriangularArrayRow:
    """Row n of the triangular array c(n, m) = C(n,m) * nabla^(n-m) c(m)."""

    n: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.n + 1:
            raise InvalidInputError(
                f"row {self.n} must have {self.n + 1} entries, got {len(self.entries)}"
            )

    def __getitem__(self, m: int) -> Fraction:
        return self.entries[m]


@dataclass(frozen=True)
class Witness:
    """First violated inequality.  Index meaning depends on the certifier:

    - complete monotonicity / alternation: j = difference order, n = offset,
      value = nabla^j c(n);
    - convex-moment row condition: j = row index n, n = entry index m
      (m = 0 is the nonnegativity check of the row head, m >= 1 the
      difference entries[m] - entries[m-1]);
    - k-alternation: j = extra difference order on top of the k base
      differences, n = offset.
    """

    j: int
    n: int
    value: Fraction


@dataclass(frozen=True)
class DepthCertificate:
    """Outcome of checking a sign condition on every reachable difference.

    verdict == CERTIFIED means every inequality with indices inside the
    stated depth holds; it is a necessary condition for the infinite
    property, never a proof of it.  verdict == VIOLATED carries the
    lexicographically-first witness (ordered by j, then n).
    """

    verdict: str
    depth: int
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.verdict not in (CERTIFIED, VIOLATED):
            raise InvalidInputError(f"unknown verdict {self.verdict!r}")
        if self.verdict == VIOLATED and self.witness is None:
            raise InvalidInputError("a violated certificate needs a witness")
        if self.verdict == CERTIFIED and self.witness is not None:
            raise InvalidInputError("a certified certificate carries no witness")

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def nabla_power(c: FiniteSequence, j: int, n: int) -> Fraction:
    """nabla^j c(n) = sum_{i=0}^{j} (-1)^i C(j,i) c(n+i), exactly."""
    if j < 0 or n < 0:
        raise InvalidInputError(f"need j >= 0 and n >= 0, got j={j}, n={n}")
    if n + j > c.depth:
        raise DepthError(n + j, c.depth)
    return sum(
        (-1) ** i * comb(j, i) * c[n + i] for i in range(j + 1)
    )


def difference_table(c: FiniteSequence) -> list[tuple[Fraction, ...]]:
    """All rows (nabla^j c(n), n = 0..depth-j) for j = 0..depth.

    Built by repeated first differences; O(depth^2) Fraction ops, versus
    the O(depth^3) of calling nabla_power at every index pair.
    """
    rows = [tuple(c.values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append(tuple(prev[i] - prev[i + 1] for i in range(len(prev) - 1)))
    return rows


def triangular_row(c: FiniteSequence, n: int) -> TriangularArrayRow:
    """Row (c(n, m) = C(n,m) nabla^(n-m) c(m), m = 0..n)."""
    if n < 0:
        raise InvalidInputError(f"need n >= 0, got {n}")
    if n > c.depth:
        raise DepthError(n, c.depth)
    entries = tuple(comb(n, m) * nabla_power(c, n - m, m) for m in range(n + 1))
    return TriangularArrayRow(n=n, entries=entries)


def _all_rows(c: FiniteSequence) -> list[TriangularArrayRow]:
    """Rows 0..depth of the triangular array, via the shared difference table."""
    table = difference_table(c)
    return [
        TriangularArrayRow(
            n=n, entries=tuple(comb(n, m) * table[n - m][m] for m in range(n + 1))
        )
        for n in range(c.depth + 1)
    ]


def certify_completely_monotone(c: FiniteSequence) -> DepthCertificate:
    """Check nabla^j c(n) >= 0 for all j, n with j + n <= depth.

    Returns the lexicographically-first (j, n) violation if any.
    """
    for j, row in enumerate(difference_table(c)):
        for n, value in enumerate(row):
            if value < 0:
                return DepthCertificate(VIOLATED, c.depth, Witness(j, n, value))
    return DepthCertificate(CERTIFIED, c.depth)


def certify_completely_alternating(a: FiniteSequence) -> DepthCertificate:
    """Check nabla^j a(n) <= 0 for all j >= 1, n >= 0 with j + n <= depth.

    Equivalent to: the negated first difference of a is completely
    monotone (to the reachable depth).
    """
    table = difference_table(a)
    for j in range(1, len(table)):
        for n, value in enumerate(table[j]):
            if value > 0:
                return DepthCertificate(VIOLATED, a.depth, Witness(j, n, value))
    return DepthCertificate(CERTIFIED, a.depth)


def alternating_from_moments(c: FiniteSequence) -> FiniteSequence:
    """a(0) = 0, a(n) = n c(n-1): the alternating sequence attached to c.

    Output depth is c.depth + 1.
    """
    return FiniteSequence(
        [Fraction(0)] + [n * c[n - 1] for n in range(1, c.depth + 2)]
    )


def moments_from_alternating(a: FiniteSequence) -> FiniteSequence:
    """Inverse of alternating_from_moments: c(n) = a(n+1)/(n+1)."""
    if a[0] != 0:
        raise InvalidInputError(f"a(0) must be 0, got {a[0]}")
    if a.depth < 1:
        raise DepthError(1, a.depth)
    return FiniteSequence([a[n + 1] / (n + 1) for n in range(a.depth)])


def certify_convex_moments(c: FiniteSequence) -> DepthCertificate:
    """Check that every triangular-array row is nonnegative and nondecreasing.

    This is the discrete convexity condition: c(n, 0) >= 0 and
    c(n, m) - c(n, m-1) >= 0 for 1 <= m <= n, for every n <= depth.
    The witness stores (row n, entry m, violated value); m = 0 flags a
    negative row head, m >= 1 a decreasing step.
    """
    if c[0] != 1:
        raise InvalidInputError(f"c(0) must be 1, got {c[0]}")
    for row in _all_rows(c):
        if row.entries[0] < 0:
            return DepthCertificate(VIOLATED, c.depth, Witness(row.n, 0, row.entries[0]))
        for m in range(1, row.n + 1):
            step = row.entries[m] - row.entries[m - 1]
            if step < 0:
                return DepthCertificate(VIOLATED, c.depth, Witness(row.n, m, step))
    return DepthCertificate(CERTIFIED, c.depth)
