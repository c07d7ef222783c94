"""Higher-order convexity: k-associated sequences and their certification.

A CDF on [0,1] is (k+1)-convex (k-th derivative exists and is convex on
[0,1[) when, with vanishing derivatives at 0 up to order k-1, it is a
mixture of the component CDFs ((x - xi)/(1 - xi))^k.  On the sequence
side the object is the k-associated sequence

    a(n) = 0 for n < k,   a(n) = n(n-1)...(n-k+1) c(n-k) for n >= k,

and the certified property is k-alternation: (-nabla)^k a completely
monotone.  k = 1 reduces bit-exactly to the plain convex machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, perm

from .errors import InvalidInputError
from .momentrep import DiscreteMeasure
from .seqcalc import (
    CERTIFIED,
    DepthCertificate,
    FiniteSequence,
    certify_completely_monotone,
    difference_table,
)

ZERO = Fraction(0)


@dataclass(frozen=True)
class KAssociated:
    """A sequence whose first k entries vanish, tagged with its order k."""

    k: int
    seq: FiniteSequence

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError(f"need k >= 1, got {self.k}")
        head = self.seq.values[: self.k]
        if any(v != 0 for v in head):
            raise InvalidInputError(
                f"first {self.k} entries must vanish, got {head}"
            )


def k_associated(c: FiniteSequence, k: int) -> KAssociated:
    """Build the k-associated sequence of c: falling-factorial scaling of a
    k-step shift.  Output depth is c.depth + k; k = 1 gives (0, c(0), 2c(1), ...).
    """
    if k < 1:
        raise InvalidInputError(f"need k >= 1, got {k}")
    values = [ZERO] * k + [
        perm(n, k) * c[n - k] for n in range(k, c.depth + k + 1)
    ]
    return KAssociated(k=k, seq=FiniteSequence(values))


def certify_k_alternating(ka: KAssociated) -> DepthCertificate:
    """Check that (-nabla)^k of the sequence is completely monotone.

    Verifies nabla^j [(-1)^k nabla^k a](n) >= 0 for all j, n with
    k + j + n <= depth.  The witness (j, n) indexes the reduced sequence:
    j extra differences at offset n, i.e. order k+j at offset n of a.
    """
    if ka.k > ka.seq.depth:
        # nothing reachable beyond the forced zeros
        return DepthCertificate(CERTIFIED, ka.seq.depth)
    table = difference_table(ka.seq)
    sign = -1 if ka.k % 2 else 1
    reduced = FiniteSequence([sign * v for v in table[ka.k]])
    inner = certify_completely_monotone(reduced)
    return DepthCertificate(inner.verdict, ka.seq.depth, inner.witness)


def k_convex_moments(nu: DiscreteMeasure, k: int, depth: int) -> FiniteSequence:
    """Moments of the (k+1)-convex CDF mixed from ((x-xi)/(1-xi))^k by nu.

    Component moments in closed form:

        c_xi(n) = sum_{j=0}^{n} C(n,j) xi^(n-j) (1-xi)^j * k/(k+j)

    for xi < 1 (binomial expansion of x^n around xi under the density
    k (x-xi)^(k-1)/(1-xi)^k), and c_1(n) = 1 for the atom at 1.
    k = 1 agrees bit-exactly with the plain mixture moments.
    """
    if k < 1:
        raise InvalidInputError(f"need k >= 1, got {k}")
    if depth < 0:
        raise InvalidInputError(f"need depth >= 0, got {depth}")
    mass = nu.total_mass()
    if mass != 1:
        raise InvalidInputError(f"need a probability measure, total mass is {mass}")
    values = []
    for n in range(depth + 1):
        c_n = ZERO
        for xi, w in nu:
            if xi == 1:
                c_n += w
            else:
                c_n += w * sum(
                    comb(n, j) * xi ** (n - j) * (1 - xi) ** j * Fraction(k, k + j)
                    for j in range(n + 1)
                )
        values.append(c_n)
    return FiniteSequence(values)
