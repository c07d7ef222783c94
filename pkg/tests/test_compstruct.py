"""Composition structures: q rows, exact pmf, samplers, consistency."""

import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats
from conftest import all_compositions, oracle_phi, oracle_pmf, oracle_q, random_exponent_data

from altmoments import (
    CompositionDistribution,
    DiscreteMeasure,
    EnumerationCapError,
    InvalidInputError,
    LaplaceExponentData,
    QRow,
    ball_allocation,
    composition_pmf,
    deletion_projection,
    enumerate_compositions,
    goodness_of_fit,
    q_row_from_jumps,
    q_row_from_phi,
    regeneration_check,
    sample_composition_paintbox,
    sample_composition_recursive,
)

HALF = Fraction(1, 2)
DRIFT_ONLY = LaplaceExponentData(1, DiscreteMeasure([]))
GEOMETRIC = LaplaceExponentData(0, DiscreteMeasure.point_mass(HALF))
KILLED = LaplaceExponentData(0, DiscreteMeasure.point_mass(1))
MIXED = LaplaceExponentData(HALF, DiscreteMeasure([(1, HALF)]))


def phi_values(data, n):
    from altmoments import laplace_exponent

    return [laplace_exponent(data, k) for k in range(n + 1)]


class TestEnumeration:
    def test_lexicographic_order(self):
        assert list(enumerate_compositions(3)) == [
            (1, 1, 1),
            (1, 2),
            (2, 1),
            (3,),
        ]

    def test_counts(self):
        for n in range(1, 9):
            comps = list(enumerate_compositions(n))
            assert len(comps) == 2 ** (n - 1)
            assert set(comps) == set(all_compositions(n))
            assert all(sum(c) == n for c in comps)


class TestQRowValidation:
    def test_wrong_length(self):
        with pytest.raises(InvalidInputError):
            QRow(2, (Fraction(1),))

    def test_must_sum_to_one(self):
        with pytest.raises(InvalidInputError):
            QRow(2, (HALF, HALF * HALF))

    def test_lookup_is_one_based(self):
        row = QRow(2, (Fraction(2, 3), Fraction(1, 3)))
        assert row.prob(1) == Fraction(2, 3)
        assert row.prob(2) == Fraction(1, 3)


class TestQRows:
    def test_pure_drift_all_singletons(self):
        for n in (1, 3, 7):
            row = q_row_from_phi(DRIFT_ONLY, n)
            assert row.prob(1) == 1
            assert all(row.prob(m) == 0 for m in range(2, n + 1))

    def test_geometric_small_rows(self):
        assert q_row_from_phi(GEOMETRIC, 2).entries == (
            Fraction(2, 3),
            Fraction(1, 3),
        )
        assert q_row_from_phi(GEOMETRIC, 3).entries == (
            Fraction(3, 7),
            Fraction(3, 7),
            Fraction(1, 7),
        )

    def test_killing_single_block(self):
        for n in (1, 2, 5):
            assert q_row_from_jumps(KILLED, n).prob(n) == 1

    def test_mixed_hand_expansion(self):
        # phi(2) = 3/2; numerators 2*(1/2) = 1 at m=1 and 1/2 at m=2
        assert q_row_from_jumps(MIXED, 2).entries == (
            Fraction(2, 3),
            Fraction(1, 3),
        )

    def test_formulas_agree_exactly(self):
        rng = random.Random(73)
        for _ in range(20):
            data = random_exponent_data(rng)
            for n in range(1, 21):
                assert q_row_from_phi(data, n) == q_row_from_jumps(data, n)

    def test_against_plain_difference_oracle(self):
        rng = random.Random(79)
        for _ in range(15):
            data = random_exponent_data(rng)
            phi = phi_values(data, 12)
            for n in range(1, 12):
                row = q_row_from_phi(data, n)
                for m in range(1, n + 1):
                    assert row.prob(m) == oracle_q(phi, n, m)


class TestCompositionPmf:
    def test_worked_example(self):
        dist = composition_pmf(GEOMETRIC, 3)
        assert dist.probs == {
            (1, 1, 1): Fraction(2, 7),
            (1, 2): Fraction(1, 7),
            (2, 1): Fraction(3, 7),
            (3,): Fraction(1, 7),
        }

    def test_pure_drift(self):
        dist = composition_pmf(DRIFT_ONLY, 5)
        assert dist.prob((1,) * 5) == 1

    def test_killing(self):
        dist = composition_pmf(KILLED, 5)
        assert dist.prob((5,)) == 1

    def test_against_enumeration_oracle(self):
        rng = random.Random(83)
        for _ in range(10):
            data = random_exponent_data(rng)
            for n in (1, 4, 7):
                dist = composition_pmf(data, n)
                expected = oracle_pmf(phi_values(data, n), n)
                assert dist.probs == expected

    def test_cap_enforced(self):
        with pytest.raises(EnumerationCapError, match="cap 16"):
            composition_pmf(GEOMETRIC, 17)
        with pytest.raises(EnumerationCapError) as exc:
            composition_pmf(GEOMETRIC, 6, cap=5)
        assert exc.value.cap == 5 and exc.value.n == 6

    def test_probabilities_sum_to_one(self):
        rng = random.Random(89)
        for _ in range(10):
            dist = composition_pmf(random_exponent_data(rng), 8)
            assert sum(dist.probs.values()) == 1


class TestRecursiveSampler:
    def test_pure_drift_deterministic(self):
        rng = np.random.default_rng(0)
        assert sample_composition_recursive(DRIFT_ONLY, 6, rng) == (1,) * 6

    def test_killing_deterministic(self):
        rng = np.random.default_rng(0)
        assert sample_composition_recursive(KILLED, 6, rng) == (6,)

    def test_frequency_of_one_cell(self):
        # P(2,1) = 3/7; a 100k-draw frequency stays within 3 sigma
        rng = np.random.default_rng(1234)
        draws = 100000
        hits = sum(
            sample_composition_recursive(GEOMETRIC, 3, rng) == (2, 1)
            for _ in range(draws)
        )
        p = 3 / 7
        assert abs(hits / draws - p) <= 3 * (p * (1 - p) / draws) ** 0.5

    def test_replay(self):
        a = [
            sample_composition_recursive(GEOMETRIC, 6, np.random.default_rng(9))
            for _ in range(50)
        ]
        b = [
            sample_composition_recursive(GEOMETRIC, 6, np.random.default_rng(9))
            for _ in range(50)
        ]
        assert a == b


class TestPaintboxSampler:
    def test_pure_drift_deterministic(self):
        rng = np.random.default_rng(0)
        assert sample_composition_paintbox(DRIFT_ONLY, 6, rng) == (1,) * 6

    def test_killing_deterministic(self):
        rng = np.random.default_rng(0)
        assert sample_composition_paintbox(KILLED, 6, rng) == (6,)

    def test_chi_square_against_pmf(self):
        rng = np.random.default_rng(4321)
        draws = 20000
        counts = Counter(
            sample_composition_paintbox(GEOMETRIC, 3, rng) for _ in range(draws)
        )
        report = goodness_of_fit(counts, composition_pmf(GEOMETRIC, 3))
        assert report.passes(1e-3)

    def test_agrees_with_recursive_in_distribution(self):
        draws = 20000
        rng = np.random.default_rng(777)
        counts = Counter(
            sample_composition_paintbox(MIXED, 4, rng) for _ in range(draws)
        )
        report = goodness_of_fit(counts, composition_pmf(MIXED, 4))
        assert report.passes(1e-3)


class TestDeletionProjection:
    def test_worked_example(self):
        projected = deletion_projection(composition_pmf(GEOMETRIC, 3))
        assert projected.probs == {
            (1, 1): Fraction(2, 3),
            (2,): Fraction(1, 3),
        }
        assert projected == composition_pmf(GEOMETRIC, 2)

    def test_single_composition_point_masses(self):
        ones = CompositionDistribution(4, {(1, 1, 1, 1): Fraction(1)})
        assert deletion_projection(ones).probs == {(1, 1, 1): Fraction(1)}
        block = CompositionDistribution(4, {(4,): Fraction(1)})
        assert deletion_projection(block).probs == {(3,): Fraction(1)}

    def test_needs_size_two(self):
        with pytest.raises(InvalidInputError):
            deletion_projection(CompositionDistribution(1, {(1,): Fraction(1)}))

    def test_consistency_for_random_data(self):
        rng = random.Random(97)
        for _ in range(6):
            data = random_exponent_data(rng)
            for n in range(2, 9):
                assert deletion_projection(
                    composition_pmf(data, n)
                ) == composition_pmf(data, n - 1)

    def test_sorted_projection_consistency(self):
        # aggregating by multiset of parts commutes with deletion
        def ranked(dist):
            out = {}
            for parts, p in dist.probs.items():
                key = tuple(sorted(parts, reverse=True))
                out[key] = out.get(key, Fraction(0)) + p
            return out

        rng = random.Random(101)
        for _ in range(5):
            data = random_exponent_data(rng)
            for n in range(2, 7):
                assert ranked(deletion_projection(composition_pmf(data, n))) == ranked(
                    composition_pmf(data, n - 1)
                )


class TestRegenerationCheck:
    def test_passes_for_exact_pmf(self):
        report = regeneration_check(GEOMETRIC, 4)
        assert report.passed and report.violation is None

    def test_passes_for_random_data(self):
        rng = random.Random(103)
        for _ in range(5):
            assert regeneration_check(random_exponent_data(rng), 6).passed

    def test_perturbed_pmf_fails_with_witness(self):
        dist = composition_pmf(GEOMETRIC, 3)
        eps = Fraction(1, 100)
        probs = dict(dist.probs)
        probs[(1, 1, 1)] += eps
        probs[(1, 2)] -= eps
        bad = CompositionDistribution(3, probs)
        report = regeneration_check(GEOMETRIC, 3, pmf=bad)
        assert not report.passed
        m, rest, conditional, expected = report.violation
        assert m == 1 and rest == (1, 1)
        assert conditional != expected


class TestBallAllocation:
    def test_everything_in_a_full_box(self):
        counts, residual = ball_allocation([1], 50, np.random.default_rng(3))
        assert counts == [50] and residual == 0

    def test_empty_box(self):
        counts, residual = ball_allocation([0], 50, np.random.default_rng(3))
        assert counts == [0] and residual == 50

    def test_binomial_concentration(self):
        n = 100000
        counts, residual = ball_allocation([HALF], n, np.random.default_rng(8))
        assert counts[0] + residual == n
        assert abs(counts[0] / n - 0.5) <= 3 * 0.5 / n**0.5

    def test_multibox_counts(self):
        breaks = [Fraction(1, 4), HALF, Fraction(3, 4)]
        counts, residual = ball_allocation(breaks, 2000, np.random.default_rng(5))
        assert sum(counts) + residual == 2000
        for c in counts + [residual]:
            assert abs(c / 2000 - 0.25) < 0.1

    def test_rejects_bad_breakpoints(self):
        rng = np.random.default_rng(0)
        with pytest.raises(InvalidInputError):
            ball_allocation([HALF, Fraction(1, 4)], 10, rng)
        with pytest.raises(InvalidInputError):
            ball_allocation([Fraction(5, 4)], 10, rng)
        with pytest.raises(InvalidInputError):
            ball_allocation([], 10, rng)


class TestGoodnessOfFit:
    def test_observation_outside_support_fails(self):
        dist = composition_pmf(DRIFT_ONLY, 3)
        report = goodness_of_fit({(3,): 5}, dist)
        assert report.pvalue == 0.0 and not report.passes()

    def test_single_cell_support_is_vacuous(self):
        dist = composition_pmf(DRIFT_ONLY, 3)
        report = goodness_of_fit({(1, 1, 1): 5}, dist)
        assert report.dof == 0 and report.pvalue == 1.0

    def test_matches_scipy_chisquare(self):
        dist = composition_pmf(GEOMETRIC, 3)
        observed = {(1, 1, 1): 290, (1, 2): 140, (2, 1): 430, (3,): 140}
        report = goodness_of_fit(observed, dist)
        support = sorted(dist.support())
        f_obs = [observed[c] for c in support]
        f_exp = [float(dist.prob(c)) * 1000 for c in support]
        stat, pvalue = scipy.stats.chisquare(f_obs, f_exp)
        assert report.statistic == pytest.approx(stat)
        assert report.pvalue == pytest.approx(pvalue)
        assert report.dof == 3

    def test_no_observations_rejected(self):
        with pytest.raises(InvalidInputError):
            goodness_of_fit({}, composition_pmf(GEOMETRIC, 3))
