"""Laplace exponents of subordinators, evaluated exactly at integers.

A subordinator (nondecreasing Levy process, possibly killed) is described
by a drift d >= 0 and a jump measure.  We store the jump measure in the
transformed coordinate u = 1 - exp(-jump size), supported on ]0,1] with
u = 1 encoding jumps to infinity (killing).  In that coordinate

    phi(lam) = lam * d + sum_j w_j (1 - (1 - u_j)^lam)

is exact rational at every integer lam, which is what makes the whole
composition-structure layer exact.  Jump sizes in the raw scale are
-log(1 - u): irrational for rational u, so the raw scale never appears
outside the floating-point paintbox sampler.

The alternative "mix" coordinate x = 1 - u (weights rescaled by u) writes
the same exponent as lam*d + sum v (1 - x^lam)/(1 - x), which is the form
taken by completely alternating sequences of measures; with phi(1) = 1
the mix-scale atoms plus an atom of size d at 1 form exactly the mixing
measure of the convex CDF whose moments are phi(n+1)/(n+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvalidInputError, NormalizationError
from .momentrep import DiscreteMeasure
from .seqcalc import FiniteSequence, to_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LaplaceExponentData:
    """Drift plus transformed jump measure; must not be degenerate.

    jump_measure atoms live in ]0,1] (u = 1 - exp(-jump size); u = 1 is
    the killing mass).  drift >= 0, and drift + total jump mass > 0 so
    that phi(n) > 0 for n >= 1.
    """

    drift: Fraction
    jump_measure: DiscreteMeasure

    def __init__(self, drift, jump_measure: DiscreteMeasure):
        d = to_fraction(drift)
        if d < 0:
            raise InvalidInputError(f"drift must be >= 0, got {d}")
        if not isinstance(jump_measure, DiscreteMeasure):
            jump_measure = DiscreteMeasure(jump_measure)
        for u, _ in jump_measure:
            if u == 0:
                raise InvalidInputError("jump atom at 0 is not a jump")
        if d == 0 and jump_measure.total_mass() == 0:
            raise InvalidInputError(
                "degenerate data: drift = 0 and no jump mass (phi would vanish)"
            )
        object.__setattr__(self, "drift", d)
        object.__setattr__(self, "jump_measure", jump_measure)

    def total_jump_mass(self) -> Fraction:
        return self.jump_measure.total_mass()


def laplace_exponent(data: LaplaceExponentData, lam: int) -> Fraction:
    """phi(lam) = lam*d + sum_j w_j (1 - (1-u_j)^lam), exact at integers."""
    if lam < 0:
        raise InvalidInputError(f"need lam >= 0, got {lam}")
    value = lam * data.drift
    for u, w in data.jump_measure:
        value += w * (1 - (1 - u) ** lam)
    return value


def laplace_exponent_at(data: LaplaceExponentData, lam: float) -> float:
    """Float evaluation of phi at real lam >= 0 by the defining formula.

    Matches laplace_exponent exactly at integers (up to float rounding of
    the exact rational); use this for non-integer arguments.
    """
    if lam < 0:
        raise InvalidInputError(f"need lam >= 0, got {lam}")
    value = lam * float(data.drift)
    for u, w in data.jump_measure:
        value += float(w) * (1.0 - float(1 - u) ** lam)
    return value


def laplace_exponent_sequence(data: LaplaceExponentData, depth: int) -> FiniteSequence:
    """(phi(0), ..., phi(depth)); always completely alternating."""
    if depth < 0:
        raise InvalidInputError(f"need depth >= 0, got {depth}")
    return FiniteSequence([laplace_exponent(data, n) for n in range(depth + 1)])


def to_mix_scale(data: LaplaceExponentData) -> DiscreteMeasure:
    """Rewrite the jump measure in the mix coordinate x = 1 - u.

    An atom (u, w) becomes (1 - u, w * u); the drift is unchanged and is
    not part of the returned measure.
    """
    return DiscreteMeasure([(1 - u, w * u) for u, w in data.jump_measure])


def from_mix_scale(measure: DiscreteMeasure) -> DiscreteMeasure:
    """Inverse of to_mix_scale: atom (x, v) with x in [0,1[ becomes
    (1 - x, v / (1 - x)).  An atom at x = 1 has no jump counterpart
    (it is a drift contribution) and is rejected.
    """
    for x, _ in measure:
        if x == 1:
            raise InvalidInputError(
                "mix-scale atom at 1 encodes drift, not a jump; pass it as drift"
            )
    return DiscreteMeasure([(1 - x, v / (1 - x)) for x, v in measure])


def laplace_exponent_mix_scale(drift, measure: DiscreteMeasure, lam: int) -> Fraction:
    """phi evaluated from mix-scale atoms: lam*d + sum v (1-x^lam)/(1-x).

    Agrees exactly with laplace_exponent after from_mix_scale.
    """
    if lam < 0:
        raise InvalidInputError(f"need lam >= 0, got {lam}")
    d = to_fraction(drift)
    value = lam * d
    for x, v in measure:
        if x == 1:
            raise InvalidInputError("mix-scale atom at 1 must be passed as drift")
        value += v * (1 - x**lam) / (1 - x)
    return value


def mixing_measure(data: LaplaceExponentData) -> DiscreteMeasure:
    """Mix-scale atoms together with the drift as an atom at 1.

    For normalized data (phi(1) = 1) this is the probability mixing
    measure of the convex CDF associated with the exponent.
    """
    atoms = list(to_mix_scale(data).atoms)
    if data.drift > 0:
        atoms.append((ONE, data.drift))
    return DiscreteMeasure(atoms)


def normalized(data: LaplaceExponentData) -> LaplaceExponentData:
    """Rescale drift and weights by 1/phi(1) so that phi(1) = 1."""
    factor = laplace_exponent(data, 1)
    if factor == 1:
        return data
    return LaplaceExponentData(
        drift=data.drift / factor,
        jump_measure=data.jump_measure.scaled(1 / factor),
    )


def moments_from_laplace_exponent(
    data: LaplaceExponentData, depth: int
) -> FiniteSequence:
    """Moments c(n) = phi(n+1)/(n+1) of the convex CDF behind the exponent.

    Requires phi(1) = 1 (so that c(0) = 1); otherwise raises
    NormalizationError carrying phi(1) for the caller to rescale.
    """
    if depth < 0:
        raise InvalidInputError(f"need depth >= 0, got {depth}")
    phi1 = laplace_exponent(data, 1)
    if phi1 != 1:
        raise NormalizationError(phi1)
    return FiniteSequence(
        [laplace_exponent(data, n + 1) / (n + 1) for n in range(depth + 1)]
    )


def newton_interpolate(values: FiniteSequence, lam: float) -> float:
    """Newton forward-difference polynomial through (0, v(0)), ..., (N, v(N)),
    evaluated at real lam >= 0.

    The polynomial is sum_{j=0}^{N} binom(lam, j) * Delta^j v(0) with
    Delta the ordinary forward difference; coefficients are computed
    exactly and the evaluation is exact (returned as float) whenever lam
    is an integer, so interpolation nodes reproduce exactly.
    """
    if values.depth < 1:
        raise InvalidInputError("need at least two nodes (depth >= 1)")
    if lam < 0:
        raise InvalidInputError(f"need lam >= 0, got {lam}")
    # Delta^j v(0) = (-1)^j nabla^j v(0); build the first column exactly.
    coeffs = []
    row = list(values.values)
    sign = 1
    for _ in range(values.depth + 1):
        coeffs.append(sign * row[0])
        row = [row[i] - row[i + 1] for i in range(len(row) - 1)]
        sign = -sign
    if float(lam).is_integer():
        lam_int = int(lam)
        exact = sum(
            (comb(lam_int, j) * coeffs[j] for j in range(min(lam_int, values.depth) + 1)),
            ZERO,
        )
        return float(exact)
    total = 0.0
    binom = 1.0
    for j, coeff in enumerate(coeffs):
        if j > 0:
            binom *= (lam - j + 1) / j
        total += binom * float(coeff)
    return total
