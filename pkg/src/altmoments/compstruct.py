"""Regenerative composition structures driven by a Laplace exponent.

A composition of n is an ordered tuple of positive parts summing to n.
The structures built here are regenerative: conditionally on the first
part being m, the rest is a copy of the size-(n-m) composition.  The law
is determined by the first-part row

    q(n, m) = -C(n,m) nabla^m phi(n-m) / phi(n),   m = 1..n,

with phi the integer Laplace exponent; the same row also has a direct
form in terms of drift and jump atoms, and the two are checked against
each other in the tests.  Everything distributional is exact rational;
only the two Monte Carlo samplers touch floating point.

Samplers take an explicit numpy Generator so identical seeds replay
bit-for-bit.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping, Optional

import numpy as np
from scipy.stats import chi2

from .errors import EnumerationCapError, InvalidInputError
from .seqcalc import difference_table, to_fraction
from .subord import LaplaceExponentData, laplace_exponent, laplace_exponent_sequence

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_CAP = 16

Composition = tuple[int, ...]


def _check_composition(parts: Composition, n: int):
    if not parts or any(p < 1 for p in parts) or sum(parts) != n:
        raise InvalidInputError(f"{parts!r} is not a composition of {n}")


def enumerate_compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in enumerate_compositions(n - first):
            yield (first,) + rest


@dataclass(frozen=True)
class QRow:
    """First-part distribution at size n: entries[m-1] = q(n, m)."""

    n: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.n:
            raise InvalidInputError(
                f"row for size {self.n} must have {self.n} entries"
            )
        if any(q < 0 for q in self.entries):
            raise InvalidInputError("negative first-part probability")
        if sum(self.entries) != 1:
            raise InvalidInputError(
                f"first-part probabilities sum to {sum(self.entries)}, not 1"
            )

    def prob(self, m: int) -> Fraction:
        return self.entries[m - 1]


@dataclass(frozen=True)
class CompositionDistribution:
    """Exact distribution of the size-n composition (zero entries kept)."""

    n: int
    probs: dict[Composition, Fraction]

    def __post_init__(self):
        for parts in self.probs:
            _check_composition(parts, self.n)
        total = sum(self.probs.values())
        if total != 1:
            raise InvalidInputError(f"probabilities sum to {total}, not 1")
        if any(p < 0 for p in self.probs.values()):
            raise InvalidInputError("negative probability")

    def prob(self, parts: Composition) -> Fraction:
        return self.probs.get(tuple(parts), ZERO)

    def support(self) -> dict[Composition, Fraction]:
        return {parts: p for parts, p in self.probs.items() if p > 0}


def q_row_from_phi(data: LaplaceExponentData, n: int) -> QRow:
    """q(n, m) from iterated differences of the integer Laplace exponent."""
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    phi = laplace_exponent_sequence(data, n)
    table = difference_table(phi)
    phi_n = phi[n]
    entries = tuple(
        -comb(n, m) * table[m][n - m] / phi_n for m in range(1, n + 1)
    )
    return QRow(n=n, entries=entries)


def q_row_from_jumps(data: LaplaceExponentData, n: int) -> QRow:
    """q(n, m) directly from drift and jump atoms.

    Numerator n*d for m = 1 plus C(n,m) sum_j w_j u_j^m (1-u_j)^(n-m),
    normalized by phi(n).  Must agree exactly with q_row_from_phi.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    phi_n = laplace_exponent(data, n)
    entries = []
    for m in range(1, n + 1):
        num = n * data.drift if m == 1 else ZERO
        num += comb(n, m) * sum(
            (w * u**m * (1 - u) ** (n - m) for u, w in data.jump_measure), ZERO
        )
        entries.append(num / phi_n)
    return QRow(n=n, entries=tuple(entries))


@lru_cache(maxsize=4096)
def _q_row(data: LaplaceExponentData, n: int) -> QRow:
    return q_row_from_phi(data, n)


@lru_cache(maxsize=512)
def _pmf_map(data: LaplaceExponentData, n: int) -> dict[Composition, Fraction]:
    if n == 0:
        return {(): ONE}
    row = _q_row(data, n)
    out: dict[Composition, Fraction] = {}
    for m in range(1, n + 1):
        q_m = row.prob(m)
        for rest, p in _pmf_map(data, n - m).items():
            out[(m,) + rest] = q_m * p
    return out


def composition_pmf(
    data: LaplaceExponentData, n: int, cap: int = DEFAULT_CAP
) -> CompositionDistribution:
    """Exact law of the size-n composition: P(parts) = prod q(tail_j, part_j).

    Enumerates all 2^(n-1) compositions, so n is capped (default 16).
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    if n > cap:
        raise EnumerationCapError(n, cap)
    return CompositionDistribution(n=n, probs=dict(_pmf_map(data, n)))


def sample_composition_recursive(
    data: LaplaceExponentData, n: int, rng: np.random.Generator
) -> Composition:
    """Draw the first part from q(size, .), recurse on the remainder.

    The uniform draw is compared against exact rational cumulative sums,
    so cell probabilities are exact up to the 2^-53 grain of the uniform.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    parts = []
    remaining = n
    while remaining > 0:
        row = _q_row(data, remaining)
        u = Fraction(rng.random())
        cum = ZERO
        part = remaining
        for m, q in enumerate(row.entries, start=1):
            cum += q
            if u < cum:
                part = m
                break
        parts.append(part)
        remaining -= part
    return tuple(parts)


def sample_composition_paintbox(
    data: LaplaceExponentData, n: int, rng: np.random.Generator
) -> Composition:
    """Cluster n uniform sample points by the gaps of the subordinator range.

    Each sample point u is lifted to the level z = -log(1-u).  The level
    process alternates drift stretches (exponential waiting times at the
    total jump rate, levels advanced at the drift speed) with jumps of
    size -log(1-u_j) picked proportionally to the jump weights (u_j = 1
    gives an infinite jump).  Levels passed during a drift stretch are
    covered points of the range and become singletons; levels inside one
    jump interval form one part.  Boundary ties (probability zero) count
    as inside the jump.  Parts are ordered by level, which is the order
    of the sample points in [0,1].
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    drift = float(data.drift)
    jump_sizes = [
        (-math.log1p(-float(u)) if u < 1 else math.inf)
        for u, _ in data.jump_measure
    ]
    weights = np.array([float(w) for _, w in data.jump_measure])
    total_rate = float(weights.sum())
    cum_weights = np.cumsum(weights) / total_rate if total_rate > 0 else None

    levels = np.sort(-np.log1p(-rng.random(n)))
    parts: list[int] = []
    idx = 0
    y = 0.0
    while idx < n:
        if total_rate == 0:
            # pure drift: the range is everything, all points are singletons
            parts.extend([1] * (n - idx))
            break
        y_end = y + drift * rng.exponential(1.0 / total_rate)
        while idx < n and levels[idx] < y_end:
            parts.append(1)
            idx += 1
        if idx >= n:
            break
        j = int(np.searchsorted(cum_weights, rng.random(), side="right"))
        if j >= len(jump_sizes):
            j = len(jump_sizes) - 1
        y_next = y_end + jump_sizes[j]
        block = 0
        while idx < n and levels[idx] <= y_next:
            block += 1
            idx += 1
        if block:
            parts.append(block)
        y = y_next
    return tuple(parts)


def deletion_projection(dist: CompositionDistribution) -> CompositionDistribution:
    """Law after discarding one ball uniformly at random.

    From parts, part j loses the ball with probability part_j/n; an
    emptied part is removed.  Exact push-forward to size n-1.
    """
    if dist.n < 2:
        raise InvalidInputError(f"need n >= 2, got {dist.n}")
    out: dict[Composition, Fraction] = {}
    for parts, p in dist.probs.items():
        if p == 0:
            continue
        for j, part in enumerate(parts):
            if part == 1:
                smaller = parts[:j] + parts[j + 1 :]
            else:
                smaller = parts[:j] + (part - 1,) + parts[j + 1 :]
            out[smaller] = out.get(smaller, ZERO) + p * Fraction(part, dist.n)
    return CompositionDistribution(n=dist.n - 1, probs=out)


@dataclass(frozen=True)
class RegenerationReport:
    """Outcome of the exact regeneration check at one size."""

    n: int
    passed: bool
    violation: Optional[tuple[int, Composition, Fraction, Fraction]] = None
    # violation = (first part m, remainder, conditional prob, reference prob)


def regeneration_check(
    data: LaplaceExponentData,
    n: int,
    pmf: Optional[CompositionDistribution] = None,
    cap: int = DEFAULT_CAP,
) -> RegenerationReport:
    """Verify that conditioning on the first part leaves a fresh copy.

    For every m with positive first-part mass, checks exactly that
    P(composition = (m,)+rest | first part = m) equals the size-(n-m)
    law for every rest.  Pass a perturbed pmf to see it fail.
    """
    dist = pmf if pmf is not None else composition_pmf(data, n, cap=cap)
    for m in range(1, n):
        mass = sum(
            (p for parts, p in dist.probs.items() if parts[0] == m), ZERO
        )
        if mass == 0:
            continue
        reference = composition_pmf(data, n - m, cap=cap)
        for rest in enumerate_compositions(n - m):
            conditional = dist.prob((m,) + rest) / mass
            expected = reference.prob(rest)
            if conditional != expected:
                return RegenerationReport(
                    n=n, passed=False, violation=(m, rest, conditional, expected)
                )
    return RegenerationReport(n=n, passed=True)


def ball_allocation(
    breakpoints, n: int, rng: np.random.Generator
) -> tuple[list[int], int]:
    """Drop n uniform balls into boxes cut at the given breakpoints.

    breakpoints are nondecreasing rationals X_1 <= ... <= X_k in [0,1]
    (X_0 = 0 is implicit); box j collects balls with X_{j-1} < U <= X_j.
    Returns (counts per box, residual), residual being the balls landing
    in no box (beyond X_k, or exactly at 0).  Comparisons are exact.
    """
    breaks = [to_fraction(b) for b in breakpoints]
    if not breaks:
        raise InvalidInputError("need at least one breakpoint")
    if any(b < 0 or b > 1 for b in breaks):
        raise InvalidInputError("breakpoints must lie in [0,1]")
    if any(breaks[i] > breaks[i + 1] for i in range(len(breaks) - 1)):
        raise InvalidInputError("breakpoints must be nondecreasing")
    if n < 0:
        raise InvalidInputError(f"need n >= 0, got {n}")
    counts = [0] * len(breaks)
    residual = 0
    for _ in range(n):
        u = Fraction(rng.random())
        if u == 0:
            residual += 1
            continue
        lo, hi = 0, len(breaks)
        while lo < hi:
            mid = (lo + hi) // 2
            if breaks[mid] < u:
                lo = mid + 1
            else:
                hi = mid
        if lo >= len(breaks):
            residual += 1
        else:
            counts[lo] += 1
    return counts, residual


@dataclass(frozen=True)
class ChiSquareReport:
    """Goodness-of-fit of observed composition counts against an exact law."""

    statistic: float
    dof: int
    pvalue: float

    def passes(self, significance: float = 1e-3) -> bool:
        return self.pvalue > significance


def goodness_of_fit(
    observed: Mapping[Composition, int], dist: CompositionDistribution
) -> ChiSquareReport:
    """Pearson chi-square of observed counts against dist's support.

    Any observation outside the support is an immediate fail (pvalue 0).
    With a single support cell the test is vacuous: pvalue 1.
    """
    counts = Counter({tuple(k): int(v) for k, v in observed.items()})
    support = dist.support()
    total = sum(counts.values())
    if total == 0:
        raise InvalidInputError("no observations")
    outside = set(counts) - set(support)
    if outside:
        return ChiSquareReport(statistic=math.inf, dof=max(len(support) - 1, 0), pvalue=0.0)
    stat = 0.0
    for parts, p in support.items():
        expected = total * float(p)
        diff = counts.get(parts, 0) - expected
        stat += diff * diff / expected
    dof = len(support) - 1
    if dof == 0:
        return ChiSquareReport(statistic=stat, dof=0, pvalue=1.0)
    return ChiSquareReport(statistic=stat, dof=dof, pvalue=float(chi2.sf(stat, dof)))
