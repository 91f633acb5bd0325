import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agnostest.decisions import (CutRule, Decision, DecisionProbs, ErrorBudget,
                                 FourCut, cut_decision,
                                 decision_probs_from_cut, four_cut_decision,
                                 pvalue_decision, require_feasible)
from agnostest.errors import InvalidBudgetError


class TestValueTypes:
    def test_decision_codes(self):
        assert Decision.ACCEPT.code == 0.0
        assert Decision.AGNOSTIC.code == 0.5
        assert Decision.REJECT.code == 1.0
        assert Decision.AGNOSTIC.label == "agnostic"

    @pytest.mark.parametrize("alpha,beta", [(0.0, 0.5), (1.0, 0.5),
                                            (0.5, 0.0), (0.5, 1.0), (-0.1, 0.2)])
    def test_budget_validation(self, alpha, beta):
        with pytest.raises(InvalidBudgetError):
            ErrorBudget(alpha, beta)

    def test_budget_sum_not_enforced_by_type(self):
        # alpha + beta > 1 is a legal budget; only some constructions refuse it
        budget = ErrorBudget(0.7, 0.7)
        with pytest.raises(InvalidBudgetError):
            require_feasible(budget)
        require_feasible(ErrorBudget(0.5, 0.5))

    def test_cut_rule_validation(self):
        CutRule(1.0, 1.0)
        with pytest.raises(ValueError):
            CutRule(2.0, 1.0)

    def test_four_cut_validation(self):
        FourCut(-2.0, -1.0, 1.0, 2.0)
        with pytest.raises(ValueError):
            FourCut(-1.0, -2.0, 1.0, 2.0)

    def test_probs_validation(self):
        DecisionProbs(0.2, 0.3, 0.5)
        with pytest.raises(ValueError):
            DecisionProbs(0.2, 0.3, 0.6)
        with pytest.raises(ValueError):
            DecisionProbs(-0.2, 0.7, 0.5)


class TestCutDecision:
    def test_accept_boundary_is_weak(self):
        rule = CutRule(-1.0, 1.0)
        assert cut_decision(-1.0, rule) is Decision.ACCEPT

    def test_reject_boundary_is_strict(self):
        rule = CutRule(-1.0, 1.0)
        assert cut_decision(1.0, rule) is Decision.AGNOSTIC
        assert cut_decision(1.0 + 1e-12, rule) is Decision.REJECT

    def test_degenerate_rule_never_agnostic(self):
        rule = CutRule(0.3, 0.3)
        for t in np.linspace(-2, 2, 101):
            assert cut_decision(t, rule) is not Decision.AGNOSTIC

    @settings(max_examples=200, deadline=None)
    @given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0, 5))
    def test_monotone_in_t(self, t, c0, width):
        rule = CutRule(c0, c0 + width)
        earlier = cut_decision(t, rule)
        later = cut_decision(t + 0.5, rule)
        assert later.code >= earlier.code


class TestFourCutDecision:
    CUTS = FourCut(-2.0, -1.0, 1.0, 2.0)

    def test_accept_boundary_is_weak(self):
        assert four_cut_decision(-1.0, self.CUTS) is Decision.ACCEPT
        assert four_cut_decision(1.0, self.CUTS) is Decision.ACCEPT

    def test_reject_boundary_is_strict(self):
        assert four_cut_decision(-2.0, self.CUTS) is Decision.AGNOSTIC
        assert four_cut_decision(-2.0 - 1e-9, self.CUTS) is Decision.REJECT

    def test_far_tail_rejects(self):
        assert four_cut_decision(-1e12, self.CUTS) is Decision.REJECT
        assert four_cut_decision(1e12, self.CUTS) is Decision.REJECT

    def test_degenerate_standard_bilateral(self):
        cuts = FourCut(-1.5, -1.5, 1.5, 1.5)
        for v in np.linspace(-4, 4, 401):
            assert four_cut_decision(v, cuts) is not Decision.AGNOSTIC


class TestPvalueDecision:
    BUDGET = ErrorBudget(0.05, 0.2)

    def test_table_anchors(self):
        # classic report rows: tiny p rejects, huge p accepts, middling stays open
        assert pvalue_decision(0.007, self.BUDGET) is Decision.REJECT
        assert pvalue_decision(0.996, self.BUDGET) is Decision.ACCEPT
        assert pvalue_decision(0.476, self.BUDGET) is Decision.AGNOSTIC

    def test_boundaries(self):
        assert pvalue_decision(0.05, self.BUDGET) is Decision.AGNOSTIC
        assert pvalue_decision(0.8, self.BUDGET) is Decision.ACCEPT

    def test_exhausted_budget_never_agnostic(self):
        # 0.25 and 0.75 are exactly representable, so 1 - beta == alpha
        budget = ErrorBudget(0.25, 0.75)
        for p in np.linspace(0, 1, 101):
            assert pvalue_decision(p, budget) is not Decision.AGNOSTIC

    def test_infeasible_budget(self):
        with pytest.raises(InvalidBudgetError):
            pvalue_decision(0.5, ErrorBudget(0.6, 0.6))

    def test_bad_pvalue(self):
        with pytest.raises(ValueError):
            pvalue_decision(1.5, self.BUDGET)


class TestDecisionProbsFromCut:
    def test_degenerate_rule_no_agnostic_mass(self):
        probs = decision_probs_from_cut(lambda c: min(max(c, 0.0), 1.0),
                                        CutRule(0.4, 0.4))
        assert probs.p_agnostic == 0.0
        assert probs.p_accept + probs.p_reject == pytest.approx(1.0, abs=1e-12)

    def test_point_mass_below_accept_cut(self):
        probs = decision_probs_from_cut(lambda c: 1.0, CutRule(0.0, 1.0))
        assert probs.p_accept == 1.0
        assert probs.p_reject == 0.0

    def test_sums_to_one(self):
        probs = decision_probs_from_cut(lambda c: min(max(c, 0.0), 1.0),
                                        CutRule(0.25, 0.75))
        total = probs.p_accept + probs.p_agnostic + probs.p_reject
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_invalid_cdf_output(self):
        with pytest.raises(ValueError):
            decision_probs_from_cut(lambda c: 1.5, CutRule(0.0, 1.0))
