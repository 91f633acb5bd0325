import math
from itertools import combinations

import numpy as np
import pytest

from agnostest.decisions import Decision, ErrorBudget, cut_decision
from agnostest.permutation import permutation_test

BUDGET = ErrorBudget(0.05, 0.2)


def brute_force_p(x, y):
    """Independent enumeration: bitmask over every assignment of y labels."""
    pool = list(x) + list(y)
    m, n = len(x), len(y)
    total = m + n

    def stat(y_idx):
        y_vals = [pool[i] for i in y_idx]
        x_vals = [pool[i] for i in range(total) if i not in set(y_idx)]
        return math.fsum(y_vals) / n - math.fsum(x_vals) / m

    observed = stat(tuple(range(m, total)))
    hits = 0
    count = 0
    for mask in range(1 << total):
        if bin(mask).count("1") != n:
            continue
        count += 1
        idx = tuple(i for i in range(total) if mask >> i & 1)
        if stat(idx) >= observed:
            hits += 1
    assert count == math.comb(total, n)
    return hits / count


class TestExactMode:
    def test_identical_groups_never_reject(self):
        values = [0.3, -1.2, 0.7, 2.1]
        report = permutation_test(values, values, BUDGET)
        assert report.p_value >= 0.5
        assert report.decision is not Decision.REJECT

    def test_small_case_matches_enumeration(self, rng):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        report = permutation_test(x, y, BUDGET)
        assert report.p_value == brute_force_p(x, y)

    def test_extreme_shift(self, rng):
        x = rng.normal(size=10)
        y = rng.normal(size=10) + 100.0
        report = permutation_test(x, y, BUDGET)
        assert report.p_value == 1.0 / math.comb(20, 10)
        assert report.decision is Decision.REJECT

    def test_statistic_is_mean_difference(self):
        report = permutation_test([0.0, 1.0], [3.0, 5.0], BUDGET)
        assert report.statistic == pytest.approx(3.5)

    def test_capacity_cap(self, rng):
        x = rng.normal(size=12)
        y = rng.normal(size=12)
        with pytest.raises(ValueError, match="cap"):
            permutation_test(x, y, BUDGET, method="exact")

    def test_decision_consistent_with_thresholds(self, rng):
        for _ in range(10):
            x = rng.normal(size=4)
            y = rng.normal(size=5) + rng.normal()
            report = permutation_test(x, y, BUDGET)
            assert cut_decision(1.0 - report.p_value,
                                report.thresholds) is report.decision


class TestMonteCarloMode:
    def test_converges_to_exact(self, rng):
        x = rng.normal(size=4)
        y = rng.normal(size=4) + 1.0
        exact = permutation_test(x, y, BUDGET).p_value
        mc = permutation_test(x, y, BUDGET, method="monte_carlo",
                              replicates=200_000, seed=7).p_value
        se = math.sqrt(exact * (1 - exact) / 200_000)
        assert abs(mc - exact) <= 3 * se + 1e-5

    def test_deterministic_given_seed(self, rng):
        x = rng.normal(size=6)
        y = rng.normal(size=6)
        first = permutation_test(x, y, BUDGET, method="monte_carlo",
                                 replicates=500, seed=11)
        second = permutation_test(x, y, BUDGET, method="monte_carlo",
                                  replicates=500, seed=11)
        assert first.p_value == second.p_value

    def test_add_one_estimate_never_zero(self, rng):
        x = rng.normal(size=5)
        y = rng.normal(size=5) + 50.0
        report = permutation_test(x, y, BUDGET, method="monte_carlo",
                                  replicates=999, seed=3)
        assert report.p_value >= 1.0 / 1000.0


class TestValidation:
    def test_bad_method(self):
        with pytest.raises(ValueError):
            permutation_test([1.0, 2.0], [3.0], BUDGET, method="bootstrap")

    def test_empty_group(self):
        with pytest.raises(ValueError):
            permutation_test([], [1.0], BUDGET)

    def test_single_observation_groups_allowed(self):
        report = permutation_test([1.0], [2.0], BUDGET)
        assert report.p_value == 0.5
