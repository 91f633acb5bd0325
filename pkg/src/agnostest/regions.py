"""Region estimators, the tests they induce, and logical-coherence checking."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .decisions import Decision, ErrorBudget, require_feasible
from .distributions import std_normal_quantile, student_t_quantile
from .errors import DegenerateSampleError
from .means import as_sample


@dataclass(frozen=True)
class Interval:
    """A nonempty interval of the real line; infinite endpoints are open."""

    lo: float
    hi: float
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")
        if math.isinf(self.lo) and self.closed_lo:
            object.__setattr__(self, "closed_lo", False)
        if math.isinf(self.hi) and self.closed_hi:
            object.__setattr__(self, "closed_hi", False)
        if self.lo == self.hi and not (self.closed_lo and self.closed_hi):
            raise ValueError("a degenerate interval must be closed on both ends")

    def contains(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.closed_lo:
            return False
        if x == self.hi and not self.closed_hi:
            return False
        return True

    def is_subset_of(self, other: "Interval") -> bool:
        if self.lo < other.lo or (self.lo == other.lo
                                  and self.closed_lo and not other.closed_lo):
            return False
        if self.hi > other.hi or (self.hi == other.hi
                                  and self.closed_hi and not other.closed_hi):
            return False
        return True

    def intersects(self, other: "Interval") -> bool:
        if self.hi < other.lo or other.hi < self.lo:
            return False
        if self.hi == other.lo:
            return self.closed_hi and other.closed_lo
        if other.hi == self.lo:
            return other.closed_hi and self.closed_lo
        return True

    def as_csv(self) -> str:
        """Serialize as a "lo,hi" pair; infinite ends render as -inf / inf."""
        return f"{self.lo:.10g},{self.hi:.10g}"


def _touch_or_overlap(left: Interval, right: Interval) -> bool:
    # assumes left.lo <= right.lo; True when the union is one interval
    if right.lo < left.hi:
        return True
    if right.lo == left.hi:
        return left.closed_hi or right.closed_lo
    return False


def _merge_components(intervals: Sequence[Interval]) -> tuple[Interval, ...]:
    parts = sorted(intervals, key=lambda iv: (iv.lo, not iv.closed_lo))
    merged: list[Interval] = []
    for part in parts:
        if merged and _touch_or_overlap(merged[-1], part):
            last = merged[-1]
            if part.hi > last.hi:
                hi, closed_hi = part.hi, part.closed_hi
            elif part.hi == last.hi:
                hi, closed_hi = last.hi, last.closed_hi or part.closed_hi
            else:
                hi, closed_hi = last.hi, last.closed_hi
            merged[-1] = Interval(last.lo, hi, last.closed_lo, closed_hi)
        else:
            merged.append(part)
    return tuple(merged)


@dataclass(frozen=True)
class ScalarHypothesis:
    """A proper, nonempty subset of the real line as a finite interval union."""

    components: tuple[Interval, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("hypothesis must be nonempty")
        merged = _merge_components(self.components)
        if (len(merged) == 1 and math.isinf(merged[0].lo)
                and math.isinf(merged[0].hi)):
            raise ValueError("hypothesis must not be the whole real line")
        object.__setattr__(self, "components", merged)

    @staticmethod
    def less_equal(value: float) -> "ScalarHypothesis":
        return ScalarHypothesis((Interval(-math.inf, value, False, True),))

    @staticmethod
    def equal(value: float) -> "ScalarHypothesis":
        return ScalarHypothesis((Interval(value, value),))

    @staticmethod
    def greater_than(value: float) -> "ScalarHypothesis":
        return ScalarHypothesis((Interval(value, math.inf, False, False),))

    @staticmethod
    def interval(lo: float, hi: float, closed_lo: bool = True,
                 closed_hi: bool = True) -> "ScalarHypothesis":
        return ScalarHypothesis((Interval(lo, hi, closed_lo, closed_hi),))

    @staticmethod
    def union(parts: Sequence["ScalarHypothesis"]) -> "ScalarHypothesis":
        comps: list[Interval] = []
        for part in parts:
            comps.extend(part.components)
        return ScalarHypothesis(tuple(comps))

    def contains_point(self, x: float) -> bool:
        return any(c.contains(x) for c in self.components)

    def covers_interval(self, region: Interval) -> bool:
        # components are maximal and separated, so a connected region
        # fits in the union iff it fits in one component
        return any(region.is_subset_of(c) for c in self.components)

    def disjoint_from_interval(self, region: Interval) -> bool:
        return not any(region.intersects(c) for c in self.components)

    def within_interval(self, region: Interval) -> bool:
        return all(c.is_subset_of(region) for c in self.components)

    def is_subset_of(self, other: "ScalarHypothesis") -> bool:
        return all(other.covers_interval(c) for c in self.components)

    def complement(self) -> "ScalarHypothesis":
        gaps: list[Interval] = []
        cursor = (-math.inf, False)
        for comp in self.components:
            if (cursor[0] < comp.lo
                    or (cursor[0] == comp.lo and cursor[1] and not comp.closed_lo)):
                gaps.append(Interval(cursor[0], comp.lo, cursor[1],
                                     not comp.closed_lo))
            cursor = (comp.hi, not comp.closed_hi)
        if cursor[0] < math.inf:
            gaps.append(Interval(cursor[0], math.inf, cursor[1], False))
        return ScalarHypothesis(tuple(gaps))


@dataclass(frozen=True)
class NestedRegions:
    """A pair of region estimates with the inner contained in the outer."""

    inner: Interval
    outer: Interval

    def __post_init__(self):
        if not self.inner.is_subset_of(self.outer):
            raise ValueError("inner region must be contained in the outer region")


def region_decision(region: Interval, h0: ScalarHypothesis) -> Decision:
    """Accept when the region sits inside H0, reject when it misses H0 entirely."""
    if h0.covers_interval(region):
        return Decision.ACCEPT
    if h0.disjoint_from_interval(region):
        return Decision.REJECT
    return Decision.AGNOSTIC


def nested_region_decision(regions: NestedRegions,
                           h0: ScalarHypothesis) -> Decision:
    """Accept when H0 sits inside the inner region, reject when it misses the outer."""
    if h0.within_interval(regions.inner):
        return Decision.ACCEPT
    if h0.disjoint_from_interval(regions.outer):
        return Decision.REJECT
    return Decision.AGNOSTIC


def z_region(sample, sigma: float, alpha: float) -> Interval:
    """1 - 2 alpha confidence interval for the mean with known sigma."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    if not 0.0 < alpha <= 0.5:
        raise ValueError(f"alpha must lie in (0, 0.5], got {alpha!r}")
    arr = as_sample(sample)
    mean = float(arr.mean())
    radius = sigma / math.sqrt(arr.size) * std_normal_quantile(1.0 - alpha)
    return Interval(mean - radius, mean + radius)


def t_region(sample, alpha: float) -> Interval:
    """1 - 2 alpha confidence interval for the mean with unknown sigma."""
    if not 0.0 < alpha <= 0.5:
        raise ValueError(f"alpha must lie in (0, 0.5], got {alpha!r}")
    arr = as_sample(sample)
    s2 = arr.var(ddof=1)
    if s2 <= 0.0:
        raise DegenerateSampleError("sample variance is zero")
    mean = float(arr.mean())
    radius = math.sqrt(s2 / arr.size) * student_t_quantile(1.0 - alpha,
                                                           arr.size - 1)
    return Interval(mean - radius, mean + radius)


def t_nested_regions(sample, budget: ErrorBudget) -> NestedRegions:
    """Nested intervals whose induced test matches the bilateral t test."""
    require_feasible(budget)
    arr = as_sample(sample)
    s2 = arr.var(ddof=1)
    if s2 <= 0.0:
        raise DegenerateSampleError("sample variance is zero")
    mean = float(arr.mean())
    scale = math.sqrt(s2 / arr.size)
    df = arr.size - 1
    r_inner = scale * student_t_quantile(0.5 * (1.0 + budget.beta), df)
    r_outer = scale * student_t_quantile(1.0 - 0.5 * budget.alpha, df)
    return NestedRegions(Interval(mean - r_inner, mean + r_inner),
                         Interval(mean - r_outer, mean + r_outer))


@dataclass(frozen=True)
class CoherenceViolation:
    kind: str
    first: int
    second: Optional[int]
    detail: str


def coherence_violations(
        decided: Sequence[tuple[ScalarHypothesis, Decision]]
) -> list[CoherenceViolation]:
    """Check decided hypotheses for contradictions under set inclusion.

    Flags: a sub-hypothesis accepted while a super-hypothesis is not; a
    super-hypothesis rejected while a sub-hypothesis is not; a hypothesis
    accepted while its complement (when present) is not rejected.
    """
    violations: list[CoherenceViolation] = []
    for i, (h_i, d_i) in enumerate(decided):
        for j, (h_j, d_j) in enumerate(decided):
            if i == j or not h_i.is_subset_of(h_j):
                continue
            if d_i is Decision.ACCEPT and d_j is not Decision.ACCEPT:
                violations.append(CoherenceViolation(
                    "accept-monotonicity", i, j,
                    f"hypothesis {i} accepted but superset {j} was {d_j.label}"))
            if d_j is Decision.REJECT and d_i is not Decision.REJECT:
                violations.append(CoherenceViolation(
                    "reject-monotonicity", i, j,
                    f"hypothesis {j} rejected but subset {i} was {d_i.label}"))
    for i, (h_i, d_i) in enumerate(decided):
        if d_i is not Decision.ACCEPT:
            continue
        comp = h_i.complement()
        for j, (h_j, d_j) in enumerate(decided):
            if h_j == comp and d_j is not Decision.REJECT:
                violations.append(CoherenceViolation(
                    "complement", i, j,
                    f"hypothesis {i} accepted but its complement {j} "
                    f"was {d_j.label}"))
    return violations


def coherence_check(region: Interval,
                    hypotheses: Sequence[ScalarHypothesis]
                    ) -> list[CoherenceViolation]:
    """Coherence report for the decisions a region estimate induces."""
    decided = [(h, region_decision(region, h)) for h in hypotheses]
    return coherence_violations(decided)
