"""Three-decision z and t tests for a normal mean, with exact decision curves."""

from __future__ import annotations

import math

import numpy as np

from .decisions import (CutRule, Decision, DecisionProbs, ErrorBudget, FourCut,
                        TestReport, cut_decision, decision_probs_from_cut,
                        four_cut_decision, require_feasible)
from .distributions import (noncentral_t_cdf, std_normal_cdf,
                            std_normal_quantile, student_t_cdf,
                            student_t_quantile)
from .errors import DegenerateSampleError

SIDES = ("less_equal", "equal")


def as_sample(values) -> np.ndarray:
    """Validate a sample: one-dimensional, length >= 2, all finite."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"sample must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError(f"sample needs at least 2 observations, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample contains non-finite values")
    return arr


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    return side


def t_statistic(sample, mu0: float) -> tuple[float, int]:
    """Studentized mean sqrt(n) (xbar - mu0) / s and the sample size."""
    arr = as_sample(sample)
    n = arr.size
    s2 = arr.var(ddof=1)
    if s2 <= 0.0:
        raise DegenerateSampleError("sample variance is zero")
    return math.sqrt(n) * (arr.mean() - mu0) / math.sqrt(s2), n


def z_cut_rule(mu0: float, sigma: float, n: int, budget: ErrorBudget) -> CutRule:
    """Cut thresholds for the known-variance test of mu <= mu0 on the sample mean."""
    require_feasible(budget)
    if sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    scale = sigma / math.sqrt(n)
    c0 = mu0 - scale * std_normal_quantile(1.0 - budget.beta)
    c1 = mu0 - scale * std_normal_quantile(budget.alpha)
    return CutRule(c0, c1)


def z_test(sample, mu0: float, sigma: float, budget: ErrorBudget) -> TestReport:
    """Test mu <= mu0 with known sigma; the statistic is the sample mean."""
    arr = as_sample(sample)
    rule = z_cut_rule(mu0, sigma, arr.size, budget)
    mean = float(arr.mean())
    p = 1.0 - std_normal_cdf(math.sqrt(arr.size) * (mean - mu0) / sigma)
    return TestReport(statistic=mean, thresholds=rule,
                      decision=cut_decision(mean, rule), p_value=p)


def z_decision_probs(mu: float, mu0: float, sigma: float, n: int,
                     budget: ErrorBudget) -> DecisionProbs:
    """Exact decision probabilities of the z test when the true mean is mu."""
    rule = z_cut_rule(mu0, sigma, n, budget)
    scale = sigma / math.sqrt(n)
    return decision_probs_from_cut(
        lambda c: std_normal_cdf((c - mu) / scale), rule)


def t_test_unilateral(sample, mu0: float, budget: ErrorBudget) -> TestReport:
    """Test mu <= mu0 with unknown sigma against central-t thresholds."""
    require_feasible(budget)
    t, n = t_statistic(sample, mu0)
    rule = CutRule(student_t_quantile(budget.beta, n - 1),
                   student_t_quantile(1.0 - budget.alpha, n - 1))
    p = 1.0 - student_t_cdf(t, n - 1)
    return TestReport(statistic=t, thresholds=rule,
                      decision=cut_decision(t, rule), p_value=p)


def t_test_bilateral(sample, mu0: float, budget: ErrorBudget) -> TestReport:
    """Test mu = mu0 with unknown sigma; symmetric four-cut rule on the t statistic."""
    require_feasible(budget)
    t, n = t_statistic(sample, mu0)
    c0 = student_t_quantile(0.5 * (1.0 + budget.beta), n - 1)
    c1 = student_t_quantile(1.0 - 0.5 * budget.alpha, n - 1)
    cuts = FourCut(-c1, -c0, c0, c1)
    p = 2.0 * (1.0 - student_t_cdf(abs(t), n - 1))
    return TestReport(statistic=t, thresholds=cuts,
                      decision=four_cut_decision(t, cuts), p_value=p)


def symmetric_four_cut_probs(cuts: FourCut, df: float,
                             delta: float) -> DecisionProbs:
    """Decision probabilities of a four-cut rule on a noncentral-t statistic."""
    p_accept = (noncentral_t_cdf(cuts.c0r, df, delta)
                - noncentral_t_cdf(cuts.c0l, df, delta))
    p_reject = (noncentral_t_cdf(cuts.c1l, df, delta)
                + 1.0 - noncentral_t_cdf(cuts.c1r, df, delta))
    return DecisionProbs(max(p_accept, 0.0),
                         max(1.0 - p_accept - p_reject, 0.0), p_reject)


def t_decision_probs(mu: float, sigma: float, n: int, mu0: float,
                     budget: ErrorBudget, side: str) -> DecisionProbs:
    """Decision probabilities of the t test at true (mu, sigma), via noncentral t."""
    require_feasible(budget)
    _check_side(side)
    if sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n!r}")
    df = n - 1
    delta = math.sqrt(n) * (mu - mu0) / sigma
    if side == "less_equal":
        rule = CutRule(student_t_quantile(budget.beta, df),
                       student_t_quantile(1.0 - budget.alpha, df))
        return decision_probs_from_cut(
            lambda c: noncentral_t_cdf(c, df, delta), rule)
    c0 = student_t_quantile(0.5 * (1.0 + budget.beta), df)
    c1 = student_t_quantile(1.0 - 0.5 * budget.alpha, df)
    return symmetric_four_cut_probs(FourCut(-c1, -c0, c0, c1), df, delta)
