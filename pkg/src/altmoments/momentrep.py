"""Convex distribution functions on [0,1] as mixtures of uniforms.

A convex CDF F with F(0) = 0 (nondecreasing density on [0,1[, possibly an
atom at 1) is stored through its mixing measure nu on [0,1]: F is the
nu-mixture of the uniform CDFs

    F_xi(x) = (x - xi)/(1 - xi) for x >= xi,      xi in [0,1[,

with F_1 = unit mass at 1.  That representation is a bijection, so a
finite-atom nu is an exact, closed data model for F: CDF and density
values, moments, and the attached completely alternating sequence all
come out as exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import CertificationError, DepthError, InvalidInputError
from .seqcalc import (
    FiniteSequence,
    certify_completely_alternating,
    certify_completely_monotone,
    to_fraction,
    triangular_row,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite nonnegative measure on [0,1]: sorted (location, weight) atoms.

    The constructor canonicalizes: locations sorted strictly ascending,
    duplicate locations merged by summing weights, zero-weight atoms
    dropped.  Equality is therefore equality of measures.
    """

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, atoms: Iterable):
        merged: dict[Fraction, Fraction] = {}
        for loc, w in atoms:
            x = to_fraction(loc)
            weight = to_fraction(w)
            if not 0 <= x <= 1:
                raise InvalidInputError(f"atom location {x} outside [0,1]")
            if weight < 0:
                raise InvalidInputError(f"negative atom weight {weight} at {x}")
            merged[x] = merged.get(x, ZERO) + weight
        canon = tuple(
            (x, merged[x]) for x in sorted(merged) if merged[x] > 0
        )
        object.__setattr__(self, "atoms", canon)

    @classmethod
    def point_mass(cls, location, weight=1) -> "DiscreteMeasure":
        return cls([(location, weight)])

    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), ZERO)

    def weight_at(self, location) -> Fraction:
        x = to_fraction(location)
        for loc, w in self.atoms:
            if loc == x:
                return w
        return ZERO

    def scaled(self, factor) -> "DiscreteMeasure":
        f = to_fraction(factor)
        return DiscreteMeasure([(x, w * f) for x, w in self.atoms])

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


def _require_probability(nu: DiscreteMeasure):
    mass = nu.total_mass()
    if mass != 1:
        raise InvalidInputError(f"need a probability measure, total mass is {mass}")


@dataclass(frozen=True)
class ConvexCdf:
    """Convex CDF on [0,1] with F(0) = 0, held as its mixing measure."""

    nu: DiscreteMeasure

    def __post_init__(self):
        _require_probability(self.nu)

    def cdf(self, x) -> Fraction:
        """F(x) = sum over atoms xi < 1 of w * max(0, (x-xi)/(1-xi)),
        plus the atom at 1 if x = 1."""
        t = to_fraction(x)
        if not 0 <= t <= 1:
            raise InvalidInputError(f"x = {t} outside [0,1]")
        total = ZERO
        for xi, w in self.nu:
            if xi == 1:
                if t == 1:
                    total += w
            elif t >= xi:
                total += w * (t - xi) / (1 - xi)
        return total

    def density(self, x) -> Fraction:
        """Right-continuous density f(x) = sum_{xi <= x} w/(1-xi), x in [0,1[.

        Nondecreasing by construction; undefined at 1 (mass there is an atom).
        """
        t = to_fraction(x)
        if not 0 <= t < 1:
            raise InvalidInputError(f"x = {t} outside [0,1[")
        return sum(
            (w / (1 - xi) for xi, w in self.nu if xi <= t and xi < 1), ZERO
        )


def moments_of_mixture(nu: DiscreteMeasure, depth: int) -> FiniteSequence:
    """Moment sequence c(n), n = 0..depth, of the convex CDF mixed by nu.

    Uses the closed-form moment of each mixture component:
    integral of x^n dF_xi = (1 - xi^(n+1)) / ((n+1)(1 - xi)) for xi < 1,
    and 1 for the atom at 1.
    """
    _require_probability(nu)
    if depth < 0:
        raise InvalidInputError(f"need depth >= 0, got {depth}")
    values = []
    for n in range(depth + 1):
        c_n = ZERO
        for xi, w in nu:
            if xi == 1:
                c_n += w
            else:
                c_n += w * (1 - xi ** (n + 1)) / ((n + 1) * (1 - xi))
        values.append(c_n)
    return FiniteSequence(values)


def alternating_of_mixture(nu: DiscreteMeasure, depth: int) -> FiniteSequence:
    """The completely alternating sequence attached to a bounded measure nu:

        a(0) = 0,  a(n) = n * nu{1} + sum_{xi < 1} w (1 - xi^n)/(1 - xi).

    For a probability nu this equals n * c(n-1) with c the mixture moments.
    """
    if depth < 0:
        raise InvalidInputError(f"need depth >= 0, got {depth}")
    values = [ZERO]
    for n in range(1, depth + 1):
        a_n = ZERO
        for xi, w in nu:
            if xi == 1:
                a_n += n * w
            else:
                a_n += w * (1 - xi**n) / (1 - xi)
        values.append(a_n)
    return FiniteSequence(values)


def mixing_moments(a: FiniteSequence) -> FiniteSequence:
    """Moment sequence of the unique measure representing an alternating a.

    Returns (a(n+1) - a(n), n = 0..depth-1): the negated first difference,
    which is the moment sequence of the representing measure.  The measure
    itself (its atoms) is NOT reconstructed: inverting finitely many
    moments to atoms is an ill-posed problem this package stays out of.
    """
    if a[0] != 0:
        raise InvalidInputError(f"a(0) must be 0, got {a[0]}")
    if a.depth < 1:
        raise DepthError(1, a.depth)
    cert = certify_completely_alternating(a)
    if not cert.certified:
        raise CertificationError("sequence is not completely alternating", cert)
    return FiniteSequence([a[n + 1] - a[n] for n in range(a.depth)])


def hausdorff_reconstruct(
    c: FiniteSequence, n: int
) -> tuple[tuple[Fraction, Fraction], ...]:
    """Approximate CDF recovery from a moment prefix.

    Returns the CDF of S_n/n sampled at its jump points: pairs
    (m/n, P(S_n <= m)) for m = 0..n, where P(S_n = m) is entry m of the
    triangular-array row at n.  As n grows this converges to the CDF
    behind c at every continuity point.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    if c[0] != 1:
        raise InvalidInputError(f"c(0) must be 1, got {c[0]}")
    if c.depth < n:
        raise DepthError(n, c.depth)
    cert = certify_completely_monotone(c.prefix(n))
    if not cert.certified:
        raise CertificationError("sequence is not completely monotone", cert)
    row = triangular_row(c, n)
    points = []
    cum = ZERO
    for m in range(n + 1):
        cum += row[m]
        points.append((Fraction(m, n), cum))
    return tuple(points)
