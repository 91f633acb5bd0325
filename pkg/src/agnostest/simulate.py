"""Deterministic Monte Carlo harness for size, power, coverage and consistency.

Randomness comes from counter-based Philox streams keyed by (seed, stream id),
with the counter indexing replicates, so every table is reproducible and
independent of execution order.  Normal variates are produced by inverse-CDF
transform of the uniform draws through the package's own quantile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .decisions import Decision, DecisionProbs, ErrorBudget, FourCut
from .distributions import std_normal_quantile
from .means import z_cut_rule

_MIN_UNIFORM = 2.0 ** -53


@dataclass(frozen=True)
class SimConfig:
    replicates: int
    seed: int
    grid: tuple[float, ...] = ()

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates!r}")


def _generator(seed: int, stream: int) -> np.random.Generator:
    key = (int(seed) & (2 ** 64 - 1)) << 64 | (int(stream) & (2 ** 64 - 1))
    return np.random.Generator(np.random.Philox(key=key))


def normal_draws(seed: int, stream: int, count: int) -> np.ndarray:
    u = np.maximum(_generator(seed, stream).random(count), _MIN_UNIFORM)
    return std_normal_quantile(u)


def _proportion_se(p: float, replicates: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / replicates)


@dataclass(frozen=True)
class MonteCarloProbs:
    """Empirical decision frequencies with their binomial standard errors."""

    p_accept: float
    p_agnostic: float
    p_reject: float
    se_accept: float
    se_agnostic: float
    se_reject: float
    replicates: int

    @property
    def probs(self) -> DecisionProbs:
        return DecisionProbs(self.p_accept, self.p_agnostic, self.p_reject)


def estimate_decision_probs(test: Callable[[np.ndarray], Decision],
                            theta: float, sigma: float, n: int,
                            config: SimConfig, stream: int = 0
                            ) -> MonteCarloProbs:
    """Empirical decision frequencies of `test` on N(theta, sigma^2) samples."""
    if config.replicates < 100:
        raise ValueError("need at least 100 replicates for a frequency estimate")
    if sigma <= 0.0 or n < 1:
        raise ValueError("data model needs sigma > 0 and n >= 1")
    counts = {Decision.ACCEPT: 0, Decision.AGNOSTIC: 0, Decision.REJECT: 0}
    gen = _generator(config.seed, stream)
    remaining = config.replicates
    chunk_rows = max(1, (1 << 22) // n)
    while remaining > 0:
        rows = min(chunk_rows, remaining)
        u = np.maximum(gen.random((rows, n)), _MIN_UNIFORM)
        samples = theta + sigma * std_normal_quantile(u)
        for row in samples:
            counts[test(row)] += 1
        remaining -= rows
    r = config.replicates
    pa, pg, pr = (counts[Decision.ACCEPT] / r, counts[Decision.AGNOSTIC] / r,
                  counts[Decision.REJECT] / r)
    return MonteCarloProbs(pa, pg, pr, _proportion_se(pa, r),
                           _proportion_se(pg, r), _proportion_se(pr, r), r)


@dataclass(frozen=True)
class DominanceRow:
    theta: float
    power: float
    se: float
    reference: float
    ok: bool
    p_accept: float
    p_agnostic: float
    p_reject: float


@dataclass(frozen=True)
class DominanceReport:
    rows: tuple[DominanceRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)


def dominance_check(test: Callable[[np.ndarray], Decision],
                    budget: ErrorBudget, grid: Sequence[float],
                    config: SimConfig, *, mu0: float = 0.0, sigma: float = 1.0,
                    n: int = 10) -> DominanceReport:
    """Verify that `test` dominates the data-free test of the same level.

    The trivial benchmark has power beta on H0 (theta <= mu0) and alpha on H1;
    each grid point must reach it up to 3 Monte Carlo standard errors.
    """
    rows = []
    for i, theta in enumerate(grid):
        mc = estimate_decision_probs(test, theta, sigma, n, config, stream=i)
        on_null = theta <= mu0
        power = mc.p_accept if on_null else mc.p_reject
        se = mc.se_accept if on_null else mc.se_reject
        reference = budget.beta if on_null else budget.alpha
        rows.append(DominanceRow(theta, power, se, reference,
                                 power >= reference - 3.0 * se,
                                 mc.p_accept, mc.p_agnostic, mc.p_reject))
    return DominanceReport(tuple(rows))


@dataclass(frozen=True)
class ConsistencySchedule:
    """Per-n four-cut rules on the sample mean for H0: mu = 0.

    a_n is the level-alpha_n reject radius; b_n the accept radius.  gamma_n,
    when present, is the effect threshold beyond which the type II error is
    controlled by beta_n.
    """

    sigma: float
    ns: tuple[int, ...]
    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    a_values: tuple[float, ...]
    b_values: tuple[float, ...]
    gammas: Optional[tuple[float, ...]]
    cuts: tuple[FourCut, ...]


def default_rate(n: int) -> float:
    """The default shrinking error rate exp(-sqrt(n))."""
    return math.exp(-math.sqrt(n))


def _schedule_reject_radius(sigma: float, n: int, alpha_n: float) -> float:
    return -std_normal_quantile(0.5 * alpha_n) * sigma / math.sqrt(n)


def _checked_rates(n_list, rate):
    rates = []
    for n in n_list:
        if n < 1:
            raise ValueError(f"sample sizes must be >= 1, got {n!r}")
        value = rate(n)
        if not 0.0 < value < 1.0:
            raise ValueError(f"rate({n}) = {value!r} outside (0, 1)")
        rates.append(value)
    return rates


def build_consistency_schedule(sigma: float, n_list: Sequence[int],
                               rate: Callable[[int], float] = default_rate
                               ) -> ConsistencySchedule:
    """Shrinking-budget schedule whose power tends to 1 at every mean."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    rates = _checked_rates(n_list, rate)
    a_vals, b_vals, gammas, cuts = [], [], [], []
    for n, alpha_n in zip(n_list, rates):
        a_n = _schedule_reject_radius(sigma, n, alpha_n)
        b_n = min(a_n, n ** -0.25)
        log_term = -2.0 * math.log(math.sqrt(2.0 * math.pi) * alpha_n)
        if log_term < 0.0:
            raise ValueError(
                f"rate({n}) = {alpha_n!r} is too weak for the type II radius")
        gammas.append(b_n + math.sqrt(log_term / n))
        a_vals.append(a_n)
        b_vals.append(b_n)
        cuts.append(FourCut(-a_n, -b_n, b_n, a_n))
    return ConsistencySchedule(sigma, tuple(int(n) for n in n_list),
                               tuple(rates), tuple(rates), tuple(a_vals),
                               tuple(b_vals), tuple(gammas), tuple(cuts))


def uniform_budget_schedule(sigma: float, n_list: Sequence[int],
                            rate: Callable[[int], float] = default_rate
                            ) -> ConsistencySchedule:
    """Shrinking budgets with uniform type II control; agnostic in the limit."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    rates = _checked_rates(n_list, rate)
    a_vals, b_vals, cuts = [], [], []
    for n, alpha_n in zip(n_list, rates):
        a_n = _schedule_reject_radius(sigma, n, alpha_n)
        b_n = std_normal_quantile(0.5 * (1.0 + alpha_n)) * sigma / math.sqrt(n)
        a_vals.append(a_n)
        b_vals.append(b_n)
        cuts.append(FourCut(-a_n, -b_n, b_n, a_n))
    return ConsistencySchedule(sigma, tuple(int(n) for n in n_list),
                               tuple(rates), tuple(rates), tuple(a_vals),
                               tuple(b_vals), None, tuple(cuts))


@dataclass(frozen=True)
class SimRow:
    """One Monte Carlo table row; se belongs to the power estimate."""

    n: int
    theta: float
    p_accept: float
    p_agnostic: float
    p_reject: float
    se: float

    def power(self, mu0: float = 0.0, bilateral: bool = True) -> float:
        on_null = self.theta == mu0 if bilateral else self.theta <= mu0
        return self.p_accept if on_null else self.p_reject


def _mean_draw_rows(cuts_by_n, mu_values, sigma, config, *, mu0, bilateral):
    rows = []
    stream = 0
    for n, cuts in cuts_by_n:
        scale = sigma / math.sqrt(n)
        for mu in mu_values:
            means = mu + scale * normal_draws(config.seed, stream, config.replicates)
            stream += 1
            accept = np.mean((means >= cuts.c0l) & (means <= cuts.c0r))
            reject = np.mean((means < cuts.c1l) | (means > cuts.c1r))
            row = SimRow(int(n), float(mu), float(accept),
                         float(1.0 - accept - reject), float(reject), 0.0)
            power = row.power(mu0, bilateral)
            rows.append(SimRow(row.n, row.theta, row.p_accept, row.p_agnostic,
                               row.p_reject,
                               _proportion_se(power, config.replicates)))
    return rows


def consistency_run(schedule: ConsistencySchedule, mu_values: Sequence[float],
                    config: SimConfig) -> list[SimRow]:
    """Empirical decision frequencies of a schedule across sample sizes.

    The sufficient statistic (the sample mean) is drawn from its exact normal
    distribution, one draw per replicate.
    """
    return _mean_draw_rows(zip(schedule.ns, schedule.cuts), mu_values,
                           schedule.sigma, config, mu0=0.0, bilateral=True)


def boundary_nonconsistency_demo(budget: ErrorBudget, n_list: Sequence[int],
                                 config: SimConfig, *, mu0: float = 0.0,
                                 sigma: float = 1.0,
                                 mu_values: Optional[Sequence[float]] = None
                                 ) -> list[SimRow]:
    """Fixed-budget one-sided z tests: power stalls at the H0 boundary.

    At theta = mu0 the power never exceeds max(alpha, beta) beyond noise, for
    any sample size; interior theta rows show the usual growth.
    """
    if mu_values is None:
        mu_values = (mu0,)
    cuts_by_n = []
    for n in n_list:
        rule = z_cut_rule(mu0, sigma, int(n), budget)
        # one-sided cut as a four-cut with an unreachable left arm
        cuts_by_n.append((int(n), FourCut(-math.inf, -math.inf, rule.c0, rule.c1)))
    return _mean_draw_rows(cuts_by_n, mu_values, sigma, config,
                           mu0=mu0, bilateral=False)
