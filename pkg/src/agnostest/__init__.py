"""Three-decision hypothesis testing with type I and type II error control.

Tests return one of accept / agnostic / reject, so that both error
probabilities can be bounded simultaneously; the agnostic outcome absorbs the
cases where the data are not decisive at the requested budgets.
"""

from .decisions import (CutRule, Decision, DecisionProbs, ErrorBudget, FourCut,
                        TestReport, cut_decision, decision_probs_from_cut,
                        four_cut_decision, pvalue_decision, require_feasible)
from .distributions import (f_cdf, noncentral_t_cdf,
                            regularized_incomplete_beta, std_normal_cdf,
                            std_normal_quantile, student_t_cdf,
                            student_t_quantile)
from .errors import (DegenerateSampleError, InvalidBudgetError,
                     SingularDesignError)
from .means import (t_decision_probs, t_test_bilateral, t_test_unilateral,
                    z_cut_rule, z_decision_probs, z_test)
from .permutation import permutation_test
from .regions import (Interval, NestedRegions, ScalarHypothesis,
                      coherence_check, coherence_violations,
                      nested_region_decision, region_decision, t_region,
                      t_nested_regions, z_region)
from .regression import (RegressionData, RegressionFit, effect_size_accept_cut,
                         effect_size_regression_test, fit_regression,
                         glh_f_test, regression_contrast_test)
from .simulate import (ConsistencySchedule, MonteCarloProbs, SimConfig, SimRow,
                       boundary_nonconsistency_demo, build_consistency_schedule,
                       consistency_run, dominance_check,
                       estimate_decision_probs, uniform_budget_schedule)

__version__ = "0.1.0"

__all__ = [
    "CutRule", "Decision", "DecisionProbs", "ErrorBudget", "FourCut",
    "TestReport", "cut_decision", "decision_probs_from_cut",
    "four_cut_decision", "pvalue_decision", "require_feasible",
    "f_cdf", "noncentral_t_cdf", "regularized_incomplete_beta",
    "std_normal_cdf", "std_normal_quantile", "student_t_cdf",
    "student_t_quantile",
    "DegenerateSampleError", "InvalidBudgetError", "SingularDesignError",
    "t_decision_probs", "t_test_bilateral", "t_test_unilateral", "z_cut_rule",
    "z_decision_probs", "z_test",
    "permutation_test",
    "Interval", "NestedRegions", "ScalarHypothesis", "coherence_check",
    "coherence_violations", "nested_region_decision", "region_decision",
    "t_region", "t_nested_regions", "z_region",
    "RegressionData", "RegressionFit", "effect_size_accept_cut",
    "effect_size_regression_test", "fit_regression", "glh_f_test",
    "regression_contrast_test",
    "ConsistencySchedule", "MonteCarloProbs", "SimConfig", "SimRow",
    "boundary_nonconsistency_demo", "build_consistency_schedule",
    "consistency_run", "dominance_check", "estimate_decision_probs",
    "uniform_budget_schedule",
]
