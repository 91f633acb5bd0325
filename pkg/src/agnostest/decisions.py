"""Decision algebra: three-valued outcomes, error budgets and cut rules."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .errors import InvalidBudgetError

_PROB_TOL = 1e-12


class Decision(enum.Enum):
    """Outcome of a three-decision test, with the conventional numeric codes."""

    ACCEPT = 0.0
    AGNOSTIC = 0.5
    REJECT = 1.0

    @property
    def code(self) -> float:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class ErrorBudget:
    """Bounds (alpha, beta) on the type I and type II error probabilities.

    alpha + beta <= 1 is deliberately not enforced here: unilateral cut tests
    remain meaningful beyond that regime (the thresholds merely cross).
    Constructions that need disjoint accept/reject regions call
    require_feasible().
    """

    alpha: float
    beta: float

    def __post_init__(self):
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not 0.0 < value < 1.0:
                raise InvalidBudgetError(
                    f"{name} must lie strictly inside (0, 1), got {value!r}")


def require_feasible(budget: ErrorBudget) -> ErrorBudget:
    """Raise unless alpha + beta <= 1 (accept and reject regions disjoint)."""
    if budget.alpha + budget.beta > 1.0:
        raise InvalidBudgetError(
            f"alpha + beta must be <= 1, got {budget.alpha} + {budget.beta}")
    return budget


@dataclass(frozen=True)
class CutRule:
    """Unilateral rule: accept if T <= c0, reject if T > c1, agnostic between."""

    c0: float
    c1: float

    def __post_init__(self):
        if not self.c0 <= self.c1:
            raise ValueError(f"cut rule needs c0 <= c1, got {self.c0} > {self.c1}")


@dataclass(frozen=True)
class FourCut:
    """Bilateral rule: reject outside [c1l, c1r], accept inside [c0l, c0r]."""

    c1l: float
    c0l: float
    c0r: float
    c1r: float

    def __post_init__(self):
        if not self.c1l <= self.c0l <= self.c0r <= self.c1r:
            raise ValueError(
                "four-cut rule needs c1l <= c0l <= c0r <= c1r, got "
                f"({self.c1l}, {self.c0l}, {self.c0r}, {self.c1r})")


@dataclass(frozen=True)
class DecisionProbs:
    """Probabilities of the three decisions at one parameter point."""

    p_accept: float
    p_agnostic: float
    p_reject: float

    def __post_init__(self):
        for name, p in (("p_accept", self.p_accept),
                        ("p_agnostic", self.p_agnostic),
                        ("p_reject", self.p_reject)):
            if not -_PROB_TOL <= p <= 1.0 + _PROB_TOL:
                raise ValueError(f"{name} outside [0, 1]: {p!r}")
        total = self.p_accept + self.p_agnostic + self.p_reject
        if abs(total - 1.0) > _PROB_TOL:
            raise ValueError(f"decision probabilities sum to {total!r}, not 1")


@dataclass(frozen=True)
class TestReport:
    """One test outcome: statistic, thresholds, decision, optional p-value.

    For statistic-driven tests the thresholds apply to `statistic`.  For
    p-value-driven tests (F, permutation) the rule cuts 1 - p_value, i.e.
    decision == cut_decision(1 - p_value, thresholds).
    """

    statistic: float
    thresholds: Union[CutRule, FourCut]
    decision: Decision
    p_value: Optional[float] = None


def cut_decision(t: float, rule: CutRule) -> Decision:
    """Apply a unilateral cut rule: accept weakly, reject strictly."""
    if t <= rule.c0:
        return Decision.ACCEPT
    if t > rule.c1:
        return Decision.REJECT
    return Decision.AGNOSTIC


def four_cut_decision(v: float, cuts: FourCut) -> Decision:
    """Apply a bilateral four-cut rule: reject strictly outside, accept weakly inside."""
    if v < cuts.c1l or v > cuts.c1r:
        return Decision.REJECT
    if cuts.c0l <= v <= cuts.c0r:
        return Decision.ACCEPT
    return Decision.AGNOSTIC


def pvalue_decision(p: float, budget: ErrorBudget) -> Decision:
    """Turn a p-value into a decision: reject below alpha, accept at or above 1 - beta."""
    require_feasible(budget)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p-value outside [0, 1]: {p!r}")
    if p < budget.alpha:
        return Decision.REJECT
    if p >= 1.0 - budget.beta:
        return Decision.ACCEPT
    return Decision.AGNOSTIC


def decision_probs_from_cut(cdf_at: Callable[[float], float],
                            rule: CutRule) -> DecisionProbs:
    """Decision probabilities of a cut rule under the statistic's CDF."""
    p_accept = cdf_at(rule.c0)
    cdf_c1 = cdf_at(rule.c1)
    for name, value in (("cdf(c0)", p_accept), ("cdf(c1)", cdf_c1)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} outside [0, 1]: {value!r}")
    p_reject = 1.0 - cdf_c1
    p_agnostic = max(cdf_c1 - p_accept, 0.0)
    return DecisionProbs(p_accept, p_agnostic, p_reject)
