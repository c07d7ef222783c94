"""Shared input generators and independent oracles.

The oracles recompute expected values from first principles (factorials,
exact polynomial integration, explicit enumeration over cut points)
without touching the code under test, so derived test vectors are
checked through a second route.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from altmoments import DiscreteMeasure, FiniteSequence, LaplaceExponentData

HALF = Fraction(1, 2)


# ----------------------------------------------- acceptance result reporting

_ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_runtest_logreport(report):
    """Collect one pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    num, _, slug = name[len("test_criterion_"):].partition("_")
    status = "PASS" if report.passed else "FAIL"
    _ACCEPTANCE_LINES[num] = f"criterion {num} ({slug.replace('_', ' ')}): {status}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[num])


# ----------------------------------------------------------- random inputs

def rational(rng: random.Random, max_den: int = 64, lo: int = 0, hi: int = 1) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_sequence(
    rng: random.Random, depth: int, max_den: int = 32, lo: int = -2, hi: int = 2
) -> FiniteSequence:
    return FiniteSequence([rational(rng, max_den, lo, hi) for _ in range(depth + 1)])


def random_probability_measure(
    rng: random.Random,
    max_atoms: int = 6,
    max_den: int = 64,
    allow_one: bool = True,
) -> DiscreteMeasure:
    count = rng.randint(1, max_atoms)
    locations: set[Fraction] = set()
    while len(locations) < count:
        x = rational(rng, max_den)
        if x == 1 and not allow_one:
            continue
        locations.add(x)
    weights = [rng.randint(1, max_den) for _ in locations]
    total = sum(weights)
    return DiscreteMeasure(
        [(x, Fraction(w, total)) for x, w in zip(sorted(locations), weights)]
    )


def random_exponent_data(
    rng: random.Random,
    max_atoms: int = 4,
    max_den: int = 16,
    allow_drift: bool = True,
    allow_killing: bool = True,
) -> LaplaceExponentData:
    count = rng.randint(1, max_atoms)
    locations: set[Fraction] = set()
    while len(locations) < count:
        x = Fraction(rng.randint(1, max_den), max_den)
        if x == 1 and not allow_killing:
            continue
        locations.add(x)
    atoms = [(x, rational(rng, max_den) + Fraction(1, max_den)) for x in sorted(locations)]
    drift = rational(rng, max_den) if allow_drift and rng.random() < 0.5 else Fraction(0)
    return LaplaceExponentData(drift, DiscreteMeasure(atoms))


# ----------------------------------------------------------------- oracles

def integrate_polynomial(coeffs: list[Fraction], a: Fraction, b: Fraction) -> Fraction:
    """Exact integral over [a, b] of sum_i coeffs[i] x^i."""
    total = Fraction(0)
    for i, coef in enumerate(coeffs):
        total += coef * (b ** (i + 1) - a ** (i + 1)) / (i + 1)
    return total


def oracle_beta_integral(n: int, j: int) -> Fraction:
    """integral_0^1 x^n (1-x)^j dx = n! j! / (n+j+1)!."""
    return Fraction(
        math.factorial(n) * math.factorial(j), math.factorial(n + j + 1)
    )


def oracle_binomial_row(xi: Fraction, n: int) -> list[Fraction]:
    """Exact Binomial(n, xi) pmf."""
    return [
        math.comb(n, m) * xi**m * (1 - xi) ** (n - m) for m in range(n + 1)
    ]


def oracle_mixture_moment(nu: DiscreteMeasure, n: int) -> Fraction:
    """integral x^n dF for the uniform mixture: per atom xi < 1, density
    w/(1-xi) on [xi, 1]; an atom at 1 contributes w directly."""
    total = Fraction(0)
    for xi, w in nu:
        if xi == 1:
            total += w
        else:
            mono = [Fraction(0)] * n + [Fraction(1)]
            total += w * integrate_polynomial(mono, xi, Fraction(1)) / (1 - xi)
    return total


def oracle_kconvex_moment(nu: DiscreteMeasure, k: int, n: int) -> Fraction:
    """integral x^n dF for the order-k mixture: per atom xi < 1, density
    k (x-xi)^(k-1) / (1-xi)^k on [xi, 1], expanded to a polynomial in x."""
    total = Fraction(0)
    for xi, w in nu:
        if xi == 1:
            total += w
            continue
        coeffs = [Fraction(0)] * (n + k)
        for j in range(k):
            coeffs[n + j] += math.comb(k - 1, j) * (-xi) ** (k - 1 - j)
        part = integrate_polynomial(coeffs, xi, Fraction(1))
        total += w * k * part / (1 - xi) ** k
    return total


def oracle_phi(drift: Fraction, atoms: list[tuple[Fraction, Fraction]], lam: int) -> Fraction:
    """Defining formula, recomputed with plain Fractions."""
    value = lam * Fraction(drift)
    for u, w in atoms:
        value += Fraction(w) * (1 - (1 - Fraction(u)) ** lam)
    return value


def oracle_q(phi: list[Fraction], n: int, m: int) -> Fraction:
    """q(n, m) from the difference formula, written out as a plain sum."""
    nab = sum(
        (-1) ** i * math.comb(m, i) * phi[n - m + i] for i in range(m + 1)
    )
    return -math.comb(n, m) * nab / phi[n]


def all_compositions(n: int) -> list[tuple[int, ...]]:
    """Every composition of n, via the 2^(n-1) cut-point subsets."""
    out = []
    for bits in itertools.product((0, 1), repeat=n - 1):
        parts = []
        size = 1
        for bit in bits:
            if bit:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        out.append(tuple(parts))
    return out


def oracle_pmf(phi: list[Fraction], n: int) -> dict[tuple[int, ...], Fraction]:
    """P(parts) = product of q(tail, part) over the parts, enumerated
    independently of the package."""
    out = {}
    for comp in all_compositions(n):
        p = Fraction(1)
        rest = n
        for part in comp:
            p *= oracle_q(phi, rest, part)
            rest -= part
        out[comp] = p
    return out


def sup_distance_to_line(points) -> Fraction:
    """sup_x |S(x) - x| for the right-continuous step CDF through the
    given (x, F) jump points (S = 0 before the first point), against the
    identity CDF on [0, 1].  Exact: the sup is attained at a jump point
    or at an interval end."""
    best = Fraction(0)
    prev_f = Fraction(0)
    pts = list(points)
    for i, (x, f) in enumerate(pts):
        best = max(best, abs(f - x), abs(prev_f - x))
        prev_f = f
    best = max(best, abs(pts[-1][1] - 1))
    return best


def load_schema(name: str) -> dict:
    """Load a shipped JSON schema by bare name ("pmf", "samples", ...)."""
    import json
    from pathlib import Path

    import altmoments

    path = Path(altmoments.__file__).parent / "schemas" / f"{name}.schema.json"
    return json.loads(path.read_text(encoding="utf-8"))
