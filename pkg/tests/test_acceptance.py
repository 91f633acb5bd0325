"""Acceptance gate: every criterion printed as its own pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they
complete.
"""

import io
import math
import time
from itertools import combinations

import numpy as np

from agnostest.cli import build_parser, run_regress
from agnostest.data import swiss_path
from agnostest.decisions import Decision, ErrorBudget, cut_decision
from agnostest.distributions import (f_cdf, noncentral_t_cdf, std_normal_cdf,
                                     std_normal_quantile, student_t_cdf,
                                     student_t_quantile)
from agnostest.means import t_decision_probs, t_test_unilateral, z_cut_rule, \
    z_decision_probs, z_test
from agnostest.permutation import permutation_test
from agnostest.regions import (ScalarHypothesis, coherence_check,
                               region_decision, t_region, z_region)
from agnostest.regression import (RegressionData, fit_regression, glh_f_test,
                                  regression_contrast_test)
from agnostest.simulate import (SimConfig, boundary_nonconsistency_demo,
                                build_consistency_schedule, consistency_run,
                                estimate_decision_probs)

TABLE_1 = [
    ("(Intercept)", 8.667, 5.435, 1.595, 0.119, Decision.ACCEPT),
    ("Fertility", 0.151, 0.054, 2.822, 0.007, Decision.REJECT),
    ("Agriculture", -0.012, 0.028, -0.418, 0.678, Decision.ACCEPT),
    ("Examination", 0.037, 0.096, 0.385, 0.702, Decision.AGNOSTIC),
    ("Education", 0.061, 0.085, 0.719, 0.476, Decision.AGNOSTIC),
    ("Catholic", 0.001, 0.015, 0.005, 0.996, Decision.ACCEPT),
]


def _criterion(number: int, description: str, ok: bool) -> None:
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {description}")
    assert ok, f"criterion {number} failed: {description}"


def test_criterion_1_table_reproduction():
    start = time.perf_counter()
    parser = build_parser()
    args = parser.parse_args(["regress", "--csv", str(swiss_path()),
                              "--response", "Infant.Mortality",
                              "--alpha", "0.05", "--beta", "0.2",
                              "--effect-size", "0.25"])
    out = io.StringIO()
    run_regress(args, out)
    elapsed = time.perf_counter() - start

    lines = out.getvalue().strip().splitlines()[1:]
    ok = len(lines) == 6
    for line, (name, est, se, t, p, decision) in zip(lines, TABLE_1):
        cells = line.split(",")
        ok &= cells[0] == name
        for cell, expect in zip(cells[1:5], (est, se, t, p)):
            ok &= abs(float(cell) - expect) <= 0.001
        ok &= cells[5] == decision.label
    ok &= elapsed < 1.0
    _criterion(1, "regression report reproduces all published coefficient "
                  "rows and decisions", ok)


def test_criterion_2_boundary_size_analytic():
    start = time.perf_counter()
    budget = ErrorBudget(0.05, 0.2)
    sym = ErrorBudget(0.05, 0.05)
    z_probs = z_decision_probs(0.0, 0.0, 1.0, 10, budget)
    z_sym = z_decision_probs(0.0, 0.0, 1.0, 10, sym)
    t_probs = t_decision_probs(0.0, 1.0, 10, 0.0, budget, "equal")
    ok = abs(z_probs.p_reject - budget.alpha) < 1e-9
    ok &= abs(z_sym.p_accept - sym.beta) < 1e-9
    ok &= abs(t_probs.p_accept - budget.beta) < 1e-9
    ok &= (time.perf_counter() - start) < 1.0
    _criterion(2, "analytic boundary decision probabilities hit alpha and "
                  "beta to 1e-9", ok)


def test_criterion_3_monte_carlo_size_and_coverage():
    start = time.perf_counter()
    alpha, n, sigma, reps = 0.05, 10, 1.0, 100_000
    budget = ErrorBudget(alpha, 0.05)
    config = SimConfig(replicates=reps, seed=20250809)

    rule = z_cut_rule(0.0, sigma, n, budget)
    mc = estimate_decision_probs(
        lambda s: cut_decision(float(s.mean()), rule), 0.0, sigma, n, config)
    band = 3.0 * math.sqrt(alpha * (1.0 - alpha) / reps)
    ok = abs(mc.p_reject - alpha) <= band

    from agnostest.simulate import normal_draws
    draws = normal_draws(config.seed, 1, reps * n).reshape(reps, n)
    covered = sum(z_region(row, sigma, alpha).contains(0.0) for row in draws)
    coverage = covered / reps
    target = 1.0 - 2.0 * alpha
    cov_band = 3.0 * math.sqrt(target * (1.0 - target) / reps)
    ok &= abs(coverage - target) <= cov_band
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30.0
    _criterion(3, f"empirical size {mc.p_reject:.4f} and coverage "
                  f"{coverage:.4f} inside 3-se bands in {elapsed:.1f}s", ok)


def test_criterion_4_f_and_t_agreement():
    rng = np.random.default_rng(4)
    budget = ErrorBudget(0.05, 0.2)
    ok = True
    for _ in range(100):
        n, d = 25, 4
        design = np.column_stack([np.ones(n), rng.normal(size=(n, d - 1))])
        y = design @ rng.normal(size=d) + rng.normal(size=n)
        data = RegressionData(design=design, response=y)
        fit = fit_regression(data)
        k = rng.normal(size=d)
        c = rng.normal()
        t_rep = regression_contrast_test(fit, k, c, budget, "equal")
        f_rep = glh_f_test(data, k[None, :], [c], budget)
        ok &= abs(f_rep.p_value - t_rep.p_value) < 1e-10
    _criterion(4, "single-contrast F p-values equal bilateral t p-values "
                  "to 1e-10 on 100 random problems", ok)


def test_criterion_5_permutation_oracle():
    rng = np.random.default_rng(5)
    budget = ErrorBudget(0.05, 0.2)
    ok = True
    for _ in range(50):
        m = int(rng.integers(1, 9))
        n = int(rng.integers(1, 10 - m + 1)) if m < 9 else 1
        x = rng.normal(size=m)
        y = rng.normal(loc=rng.normal(), size=n)
        report = permutation_test(x, y, budget, method="exact")
        pool = list(x) + list(y)
        total = m + n

        def stat(idx):
            y_sum = math.fsum(pool[i] for i in idx)
            x_sum = math.fsum(pool[i] for i in range(total)
                              if i not in set(idx))
            return y_sum / n - x_sum / m

        observed = stat(tuple(range(m, total)))
        hits = sum(1 for idx in combinations(range(total), n)
                   if stat(idx) >= observed)
        ok &= report.p_value == hits / math.comb(total, n)
    _criterion(5, "exact permutation p-values match brute-force enumeration "
                  "bit-exactly on 50 random problems", ok)


def test_criterion_6_region_duality_and_coherence():
    rng = np.random.default_rng(6)
    alpha = 0.05
    budget = ErrorBudget(alpha, alpha)
    thetas = np.linspace(-3.0, 3.0, 100)
    hypotheses = [ScalarHypothesis.less_equal(float(t)) for t in thetas]
    ok = True
    for _ in range(100):
        sample = rng.normal(loc=rng.normal(), scale=1.0, size=8)
        zr = z_region(sample, 1.0, alpha)
        tr = t_region(sample, alpha)
        for theta, h0 in zip(thetas, hypotheses):
            ok &= region_decision(zr, h0) is z_test(sample, float(theta), 1.0,
                                                    budget).decision
            ok &= region_decision(tr, h0) is t_test_unilateral(
                sample, float(theta), budget).decision
        ok &= coherence_check(zr, hypotheses) == []
        ok &= coherence_check(tr, hypotheses) == []
        if not ok:
            break
    _criterion(6, "unilateral test decisions equal their region duals on a "
                  "100-point grid for 100 samples, with zero coherence "
                  "violations", ok)


def test_criterion_7_consistency_demo():
    start = time.perf_counter()
    sizes = (25, 100, 400, 1600, 6400)
    schedule = build_consistency_schedule(1.0, sizes)
    config = SimConfig(replicates=10_000, seed=77)

    # analytic pre-computation: power at the largest n exceeds 0.995
    a_n, b_n = schedule.a_values[-1], schedule.b_values[-1]
    root_n = math.sqrt(sizes[-1])
    pi0 = (std_normal_cdf(b_n * root_n) - std_normal_cdf(-b_n * root_n))
    pi1 = 1.0 - (std_normal_cdf((a_n - 1.0) * root_n)
                 - std_normal_cdf((-a_n - 1.0) * root_n))
    ok = pi0 >= 0.995 and pi1 >= 0.995

    rows = consistency_run(schedule, (0.0, 1.0), config)
    for mu in (0.0, 1.0):
        seq = [r for r in rows if r.theta == mu]
        powers = [r.power() for r in seq]
        ok &= powers[-1] >= 0.99
        ok &= all(b >= a - 3.0 * (ra.se + rb.se)
                  for (a, b), (ra, rb) in zip(zip(powers, powers[1:]),
                                              zip(seq, seq[1:])))

    budget = ErrorBudget(0.05, 0.05)
    boundary = boundary_nonconsistency_demo(budget, sizes, config)
    bound = max(budget.alpha, budget.beta)
    ok &= all(r.power(bilateral=False) <= bound + 3.0 * r.se
              for r in boundary)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    _criterion(7, f"schedule power reaches 0.99 by n=6400 while fixed "
                  f"budgets stall at the boundary, in {elapsed:.1f}s", ok)


def test_criterion_8_special_function_fidelity():
    ps = np.linspace(0.001, 0.999, 999)
    ok = True
    worst = 0.0
    for p in ps:
        worst = max(worst, abs(std_normal_cdf(std_normal_quantile(p)) - p))
    ok &= worst < 1e-10
    for df in (1, 5, 9, 41, 1000):
        worst_df = max(abs(student_t_cdf(student_t_quantile(p, df), df) - p)
                       for p in ps)
        ok &= worst_df < 1e-10

    for x in (-2.5, -0.3, 0.0, 1.1, 4.0):
        for df in (3, 9, 41):
            ok &= abs(noncentral_t_cdf(x, df, 0.0)
                      - student_t_cdf(x, df)) < 1e-12

    for x in (0.05, 0.7, 2.3, 8.0):
        for df in (3, 9, 41):
            ok &= abs(f_cdf(x, 1, df)
                      - (2.0 * student_t_cdf(math.sqrt(x), df) - 1.0)) < 1e-10
    _criterion(8, "quantile round trips below 1e-10 and both distribution "
                  "identities hold", ok)
