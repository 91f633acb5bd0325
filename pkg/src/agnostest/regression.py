"""Least-squares regression with three-decision coefficient and contrast tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decisions import (CutRule, ErrorBudget, FourCut, TestReport,
                        cut_decision, four_cut_decision, pvalue_decision,
                        require_feasible)
from .distributions import (_brent_root, f_cdf, noncentral_t_cdf,
                            student_t_cdf, student_t_quantile)
from .errors import DegenerateSampleError, SingularDesignError


@dataclass(frozen=True, eq=False)
class RegressionData:
    """A full-column-rank design matrix (n x d, d < n) and response vector."""

    design: np.ndarray
    response: np.ndarray

    def __post_init__(self):
        design = np.asarray(self.design, dtype=float)
        response = np.asarray(self.response, dtype=float)
        if design.ndim != 2:
            raise ValueError(f"design must be a matrix, got shape {design.shape}")
        n, d = design.shape
        if response.shape != (n,):
            raise ValueError(
                f"response shape {response.shape} does not match design rows {n}")
        if n <= d:
            raise ValueError(f"need more rows than columns, got {n} x {d}")
        if not (np.all(np.isfinite(design)) and np.all(np.isfinite(response))):
            raise ValueError("design and response must be finite")
        object.__setattr__(self, "design", design)
        object.__setattr__(self, "response", response)


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """Least-squares estimate with its unscaled covariance and residual variance."""

    beta_hat: np.ndarray
    xtx_inverse: np.ndarray
    sigma2_hat: float
    df_resid: float

    @property
    def standard_errors(self) -> np.ndarray:
        return np.sqrt(self.sigma2_hat * np.diag(self.xtx_inverse))


def fit_regression(data: RegressionData) -> RegressionFit:
    """Fit by QR decomposition; raises SingularDesignError on rank deficiency."""
    design, y = data.design, data.response
    n, d = design.shape
    q, r = np.linalg.qr(design)
    diag = np.abs(np.diag(r))
    if diag.min() <= max(n, d) * np.finfo(float).eps * diag.max():
        raise SingularDesignError("design matrix is rank deficient")
    beta = np.linalg.solve(r, q.T @ y)
    resid = y - design @ beta
    r_inv = np.linalg.inv(r)
    xtx_inverse = r_inv @ r_inv.T
    df = n - d
    return RegressionFit(beta_hat=beta, xtx_inverse=xtx_inverse,
                         sigma2_hat=float(resid @ resid) / df, df_resid=df)


def regression_contrast_test(fit: RegressionFit, k, c: float,
                             budget: ErrorBudget, side: str) -> TestReport:
    """Test k'beta <= c (side "less_equal") or k'beta = c (side "equal")."""
    require_feasible(budget)
    if side not in ("less_equal", "equal"):
        raise ValueError(f"side must be 'less_equal' or 'equal', got {side!r}")
    k = np.asarray(k, dtype=float)
    if k.shape != fit.beta_hat.shape:
        raise ValueError(f"contrast shape {k.shape} does not match "
                         f"coefficients {fit.beta_hat.shape}")
    if fit.sigma2_hat <= 0.0:
        raise DegenerateSampleError("residual variance is zero")
    scale = math.sqrt(float(k @ fit.xtx_inverse @ k) * fit.sigma2_hat)
    v = (float(k @ fit.beta_hat) - c) / scale
    df = fit.df_resid
    if side == "less_equal":
        rule = CutRule(student_t_quantile(budget.beta, df),
                       student_t_quantile(1.0 - budget.alpha, df))
        return TestReport(statistic=v, thresholds=rule,
                          decision=cut_decision(v, rule),
                          p_value=1.0 - student_t_cdf(v, df))
    c0 = student_t_quantile(0.5 * (1.0 + budget.beta), df)
    c1 = student_t_quantile(1.0 - 0.5 * budget.alpha, df)
    cuts = FourCut(-c1, -c0, c0, c1)
    return TestReport(statistic=v, thresholds=cuts,
                      decision=four_cut_decision(v, cuts),
                      p_value=2.0 * (1.0 - student_t_cdf(abs(v), df)))


def glh_f_test(data: RegressionData, contrast_matrix, gamma0,
               budget: ErrorBudget) -> TestReport:
    """General linear hypothesis K beta = gamma0 via the F statistic's p-value."""
    require_feasible(budget)
    contrast = np.atleast_2d(np.asarray(contrast_matrix, dtype=float))
    gamma0 = np.atleast_1d(np.asarray(gamma0, dtype=float))
    fit = fit_regression(data)
    d = fit.beta_hat.size
    q = contrast.shape[0]
    if contrast.shape != (q, d):
        raise ValueError(f"contrast matrix must be q x {d}, got {contrast.shape}")
    if gamma0.shape != (q,):
        raise ValueError(f"gamma0 must have length {q}, got {gamma0.shape}")
    if q > d or np.linalg.matrix_rank(contrast) < q:
        raise SingularDesignError("contrast matrix is rank deficient")
    if fit.sigma2_hat <= 0.0:
        raise DegenerateSampleError("residual variance is zero")
    diff = contrast @ fit.beta_hat - gamma0
    middle = contrast @ fit.xtx_inverse @ contrast.T
    f_stat = float(diff @ np.linalg.solve(middle, diff)) / q / fit.sigma2_hat
    f_stat = max(f_stat, 0.0)
    p = 1.0 - f_cdf(f_stat, q, fit.df_resid)
    return TestReport(statistic=f_stat,
                      thresholds=CutRule(budget.beta, 1.0 - budget.alpha),
                      decision=pvalue_decision(p, budget), p_value=p)


def effect_size_accept_cut(d_star: float, a_k: float, df: float,
                           beta: float) -> float:
    """Largest accept cut c0 whose type II error at effect size d_star is beta.

    Solves P(-c0 <= T <= c0) = beta for a noncentral-t statistic T with the
    given degrees of freedom and noncentrality d_star / sqrt(a_k), to within
    1e-9 on the probability.
    """
    if not d_star > 0.0:
        raise ValueError(f"d_star must be > 0, got {d_star!r}")
    if not a_k > 0.0:
        raise ValueError(f"a_k must be > 0, got {a_k!r}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie strictly inside (0, 1), got {beta!r}")
    delta = d_star / math.sqrt(a_k)

    def gap(c0):
        return (noncentral_t_cdf(c0, df, delta)
                - noncentral_t_cdf(-c0, df, delta) - beta)

    hi = 1.0
    while gap(hi) < 0.0:
        hi *= 2.0
        if hi > 1e3:
            raise ValueError("no accept cut below 1e3 attains the requested beta")
    return _brent_root(gap, 0.0, hi, xtol=1e-12, ftol=1e-10)


def effect_size_regression_test(fit: RegressionFit, j: int, d_star: float,
                                budget: ErrorBudget) -> TestReport:
    """Test beta_j = 0 with the type II error calibrated at effect size d_star.

    d_star is measured on the scale of beta_j / sigma.  The reject cut is the
    two-sided level-alpha threshold; if the calibrated accept cut exceeds it,
    the accept region is truncated there (the rule degenerates to a standard
    test).
    """
    if not d_star > 0.0:
        raise ValueError(f"d_star must be > 0, got {d_star!r}")
    if fit.sigma2_hat <= 0.0:
        raise DegenerateSampleError("residual variance is zero")
    d = fit.beta_hat.size
    if not 0 <= j < d:
        raise ValueError(f"coefficient index {j} outside 0..{d - 1}")
    df = fit.df_resid
    a_j = float(fit.xtx_inverse[j, j])
    v = float(fit.beta_hat[j] / fit.standard_errors[j])
    c1 = student_t_quantile(1.0 - 0.5 * budget.alpha, df)
    c0 = min(effect_size_accept_cut(d_star, a_j, df, budget.beta), c1)
    cuts = FourCut(-c1, -c0, c0, c1)
    return TestReport(statistic=v, thresholds=cuts,
                      decision=four_cut_decision(v, cuts),
                      p_value=2.0 * (1.0 - student_t_cdf(abs(v), df)))
