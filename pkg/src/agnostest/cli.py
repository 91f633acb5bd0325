"""Command line front end: regression reports, power curves and simulations.

Every command writes a delimited table (CSV, the machine surface, or an
aligned text table) and can additionally render figures to files.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .decisions import (Decision, ErrorBudget, FourCut, cut_decision,
                        four_cut_decision)
from .distributions import student_t_cdf, student_t_quantile
from .errors import DegenerateSampleError
from .means import (symmetric_four_cut_probs, t_decision_probs, z_cut_rule,
                    z_decision_probs)
from .regions import z_region
from .regression import (RegressionData, effect_size_accept_cut,
                         effect_size_regression_test, fit_regression,
                         regression_contrast_test)
from .simulate import (SimConfig, SimRow, boundary_nonconsistency_demo,
                       build_consistency_schedule, consistency_run,
                       dominance_check, estimate_decision_probs, normal_draws)

INTERCEPT_NAME = "(Intercept)"
DEFAULT_ALPHA = 0.05
DEFAULT_BETA = 0.2
DEFAULT_EFFECT_SIZE = 0.25
DEFAULT_SEED = 20250809
SIM_SIZES = (25, 100, 400, 1600, 6400)


@dataclass(frozen=True)
class ReportRow:
    """One regression report line, mirroring the classic summary table."""

    name: str
    estimate: float
    std_error: float
    t_value: float
    p_value: float
    decision: Decision


def load_csv(path, response: str) -> tuple[RegressionData, list[str]]:
    """Read a rectangular numeric CSV into a design (with intercept) and response.

    The header row is required; all non-response columns become covariates in
    file order, after a prepended intercept column.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, header row required") from None
        header = [h.strip() for h in header]
        if response not in header:
            raise ValueError(f"{path}: response column {response!r} not found "
                             f"among {header}")
        rows = []
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(header):
                raise ValueError(f"{path}: line {line_no} has {len(record)} "
                                 f"cells, expected {len(header)}")
            parsed = []
            for col, cell in zip(header, record):
                text = cell.strip()
                try:
                    value = float(text)
                except ValueError:
                    raise ValueError(
                        f"{path}: line {line_no}, column {col!r}: "
                        f"cell {cell!r} is not numeric") from None
                if not math.isfinite(value):
                    raise ValueError(f"{path}: line {line_no}, column {col!r}: "
                                     f"cell {cell!r} is not finite")
                parsed.append(value)
            rows.append(parsed)
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least 2 data rows, got {len(rows)}")
    matrix = np.asarray(rows)
    resp_idx = header.index(response)
    y = matrix[:, resp_idx]
    covariates = np.delete(matrix, resp_idx, axis=1)
    names = [INTERCEPT_NAME] + [h for h in header if h != response]
    design = np.column_stack([np.ones(len(y)), covariates])
    return RegressionData(design=design, response=y), names


def build_regress_report(data: RegressionData, names: Sequence[str],
                         budget: ErrorBudget,
                         effect_size: float) -> list[ReportRow]:
    """Coefficient table with effect-size-calibrated three-way decisions.

    `effect_size` is a standardized (per covariate standard deviation) effect
    threshold; it is converted to each coefficient's own scale before
    calibrating the accept cut.  Columns with no variation (the intercept)
    admit no finite standardized effect, so their accept cut degenerates to
    the reject cut: a standard level-alpha test.  effect_size = 0 falls back
    to the plain bilateral (alpha, beta) contrast test.
    """
    fit = fit_regression(data)
    response_scale = float(data.response @ data.response) / len(data.response)
    if fit.sigma2_hat <= 1e-26 * max(response_scale, 1e-300):
        raise DegenerateSampleError(
            "residual variance is zero; no coefficient test is possible")
    scales = data.design.std(axis=0, ddof=1)
    df = fit.df_resid
    rows = []
    for j, name in enumerate(names):
        estimate = float(fit.beta_hat[j])
        se = float(fit.standard_errors[j])
        t_value = estimate / se
        p_value = 2.0 * (1.0 - student_t_cdf(abs(t_value), df))
        if effect_size == 0.0:
            unit = np.zeros(len(names))
            unit[j] = 1.0
            report = regression_contrast_test(fit, unit, 0.0, budget, "equal")
            decision = report.decision
        elif scales[j] == 0.0:
            c1 = student_t_quantile(1.0 - 0.5 * budget.alpha, df)
            decision = four_cut_decision(t_value, FourCut(-c1, -c1, c1, c1))
        else:
            report = effect_size_regression_test(
                fit, j, effect_size / float(scales[j]), budget)
            decision = report.decision
        rows.append(ReportRow(name, estimate, se, t_value, p_value, decision))
    return rows


def effect_size_curves(data: RegressionData, names: Sequence[str],
                       budget: ErrorBudget, effect_size: float,
                       d_grid: Sequence[float]
                       ) -> dict[str, list[tuple[float, float, float, float]]]:
    """Decision probabilities per covariate as the true Cohen's d varies."""
    fit = fit_regression(data)
    scales = data.design.std(axis=0, ddof=1)
    df = fit.df_resid
    c1 = student_t_quantile(1.0 - 0.5 * budget.alpha, df)
    curves: dict[str, list[tuple[float, float, float, float]]] = {}
    for j, name in enumerate(names):
        if scales[j] == 0.0:
            continue
        a_j = float(fit.xtx_inverse[j, j])
        scale_j = float(scales[j])
        if effect_size == 0.0:
            c0 = student_t_quantile(0.5 * (1.0 + budget.beta), df)
        else:
            c0 = min(effect_size_accept_cut(effect_size / scale_j, a_j, df,
                                            budget.beta), c1)
        cuts = FourCut(-c1, -c0, c0, c1)
        points = []
        for d in d_grid:
            delta = d / (scale_j * math.sqrt(a_j))
            probs = symmetric_four_cut_probs(cuts, df, delta)
            points.append((float(d), probs.p_accept, probs.p_agnostic,
                           probs.p_reject))
        curves[name] = points
    return curves


def _parse_grid(spec: str) -> np.ndarray:
    try:
        lo_s, hi_s, steps_s = spec.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError:
        raise ValueError(f"grid must look like lo:hi:steps, got {spec!r}") from None
    if steps < 2 or hi <= lo:
        raise ValueError(f"grid needs hi > lo and steps >= 2, got {spec!r}")
    return np.linspace(lo, hi, steps)


def power_rows(test: str, mu0: float, sigma: float, n: int,
               budget: ErrorBudget, grid: Sequence[float]
               ) -> list[tuple[float, float, float, float, float]]:
    """Analytic decision-probability rows (theta, accept, agnostic, reject, power)."""
    rows = []
    for theta in grid:
        theta = float(theta)
        if test == "z":
            probs = z_decision_probs(theta, mu0, sigma, n, budget)
            on_null = theta <= mu0
        elif test == "t_one":
            probs = t_decision_probs(theta, sigma, n, mu0, budget, "less_equal")
            on_null = theta <= mu0
        elif test == "t_two":
            probs = t_decision_probs(theta, sigma, n, mu0, budget, "equal")
            on_null = theta == mu0
        else:
            raise ValueError(f"unknown test {test!r}")
        power = probs.p_accept if on_null else probs.p_reject
        rows.append((theta, probs.p_accept, probs.p_agnostic, probs.p_reject,
                     power))
    return rows


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _write_table(header: list[str], rows: list[list[str]], fmt: str,
                 out) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    out.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
    for row in rows:
        out.write("  ".join(c.rjust(w) for c, w in zip(row, widths)) + "\n")


def _report_cells(rows: Sequence[ReportRow], pretty: bool) -> list[list[str]]:
    cells = []
    for row in rows:
        label = row.decision.label.capitalize() if pretty else row.decision.label
        cells.append([row.name, _fmt(row.estimate), _fmt(row.std_error),
                      _fmt(row.t_value), _fmt(row.p_value), label,
                      str(row.decision.code)])
    return cells


def run_regress(args, out) -> int:
    budget = ErrorBudget(args.alpha, args.beta)
    data, names = load_csv(args.csv, args.response)
    rows = build_regress_report(data, names, budget, args.effect_size)
    header = ["name", "estimate", "std_error", "t_value", "p_value",
              "decision", "decision_code"]
    _write_table(header, _report_cells(rows, args.format == "table"),
                 args.format, out)
    if args.figures:
        from . import figures
        d_grid = np.linspace(0.0, 3.0 * max(args.effect_size, 0.25), 121)
        curves = effect_size_curves(data, names, budget, args.effect_size,
                                    d_grid)
        figures.render_effect_size_curves(
            curves, Path(args.figures) / "regress_decision_probs.png")
    return 0


def run_power(args, out) -> int:
    budget = ErrorBudget(args.alpha, args.beta)
    header = ["theta", "p_accept", "p_agnostic", "p_reject", "power"]
    if args.test == "effect":
        if not args.csv or not args.coef:
            raise ValueError("--test effect requires --csv and --coef")
        data, names = load_csv(args.csv, args.response)
        grid = _parse_grid(args.grid or "0:1.5:151")
        curves = effect_size_curves(data, names, budget, args.effect_size,
                                    grid)
        if args.coef not in curves:
            raise ValueError(f"no such covariate {args.coef!r}; "
                             f"choices: {sorted(curves)}")
        rows = [(d, pa, pg, pr, pa if d == 0.0 else pr)
                for d, pa, pg, pr in curves[args.coef]]
    else:
        grid = _parse_grid(args.grid or "-2:2:161")
        rows = power_rows(args.test, args.mu0, args.sigma, args.n, budget,
                          grid)
    cells = [[f"{v:.10g}" for v in row] for row in rows]
    _write_table(header, cells, args.format, out)
    if args.figures:
        from . import figures
        figures.render_power_curves(
            rows, Path(args.figures) / f"power_{args.test}.png",
            xlabel="effect size" if args.test == "effect" else "theta")
    return 0


def _sim_rows_to_cells(rows: Sequence[SimRow]) -> list[list[str]]:
    return [[str(r.n), f"{r.theta:.10g}", f"{r.p_accept:.10g}",
             f"{r.p_agnostic:.10g}", f"{r.p_reject:.10g}", f"{r.se:.10g}"]
            for r in rows]


def _scenario_size(budget, config):
    n, sigma, mu0 = 10, 1.0, 0.0
    rule = z_cut_rule(mu0, sigma, n, budget)
    mc = estimate_decision_probs(lambda s: cut_decision(float(s.mean()), rule),
                                 mu0, sigma, n, config)
    rows = [SimRow(n, mu0, mc.p_accept, mc.p_agnostic, mc.p_reject,
                   mc.se_reject)]
    band = 3.0 * math.sqrt(budget.alpha * (1.0 - budget.alpha)
                           / config.replicates)
    return rows, abs(mc.p_reject - budget.alpha) <= band


def _scenario_coverage(budget, config):
    n, sigma, mu = 10, 1.0, 0.0
    target = 1.0 - 2.0 * budget.alpha
    gen_draws = normal_draws(config.seed, 0, config.replicates * n)
    samples = mu + sigma * gen_draws.reshape(config.replicates, n)
    below = above = inside = 0
    for row in samples:
        region = z_region(row, sigma, budget.alpha)
        if region.hi < mu:
            below += 1
        elif region.lo > mu:
            above += 1
        else:
            inside += 1
    r = config.replicates
    coverage = inside / r
    rows = [SimRow(n, mu, below / r, coverage, above / r,
                   math.sqrt(coverage * (1.0 - coverage) / r))]
    band = 3.0 * math.sqrt(target * (1.0 - target) / r)
    return rows, abs(coverage - target) <= band


def _scenario_dominance(budget, config):
    n, sigma, mu0 = 10, 1.0, 0.0
    rule = z_cut_rule(mu0, sigma, n, budget)
    grid = np.linspace(mu0 - 3.0 * sigma / math.sqrt(n),
                       mu0 + 3.0 * sigma / math.sqrt(n), 13)
    report = dominance_check(
        lambda s: cut_decision(float(s.mean()), rule), budget, grid, config,
        mu0=mu0, sigma=sigma, n=n)
    rows = [SimRow(n, r.theta, r.p_accept, r.p_agnostic, r.p_reject, r.se)
            for r in report.rows]
    return rows, report.passed


def _scenario_consistency(budget, config):
    schedule = build_consistency_schedule(1.0, SIM_SIZES)
    rows = consistency_run(schedule, (0.0, 1.0), config)
    final = [r for r in rows if r.n == SIM_SIZES[-1]]
    return rows, all(r.power() >= 0.99 for r in final)


def _scenario_boundary(budget, config):
    rows = boundary_nonconsistency_demo(budget, SIM_SIZES, config,
                                        mu_values=(0.0, 1.0))
    bound = max(budget.alpha, budget.beta)
    ok = all(r.power(bilateral=False) <= bound + 3.0 * r.se
             for r in rows if r.theta == 0.0)
    return rows, ok


_SCENARIOS = {
    "size": _scenario_size,
    "coverage": _scenario_coverage,
    "dominance": _scenario_dominance,
    "consistency": _scenario_consistency,
    "boundary": _scenario_boundary,
}


def run_simulate(args, out) -> int:
    budget = ErrorBudget(args.alpha, args.beta)
    default_reps = 100_000 if args.scenario in ("size", "coverage") else 10_000
    config = SimConfig(replicates=args.reps or default_reps, seed=args.seed)
    rows, in_band = _SCENARIOS[args.scenario](budget, config)
    header = ["n", "theta", "p_accept", "p_agnostic", "p_reject", "se"]
    _write_table(header, _sim_rows_to_cells(rows), args.format, out)
    if args.figures:
        from . import figures
        figures.render_sim_rows(
            rows, Path(args.figures) / f"simulate_{args.scenario}.png",
            title=args.scenario)
    return 0 if in_band else 1


def _add_common(parser):
    parser.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                        help="type I error bound")
    parser.add_argument("--beta", type=float, default=DEFAULT_BETA,
                        help="type II error bound")
    parser.add_argument("--format", choices=("csv", "table"), default="csv")
    parser.add_argument("--figures", metavar="DIR",
                        help="also render figures into this directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agnostest",
        description="Three-decision hypothesis testing with simultaneous "
                    "type I and type II error control.")
    sub = parser.add_subparsers(dest="command", required=True)

    regress = sub.add_parser("regress",
                             help="agnostic regression coefficient report")
    regress.add_argument("--csv", required=True, help="input CSV path")
    regress.add_argument("--response", required=True,
                         help="response column name")
    regress.add_argument("--effect-size", type=float,
                         default=DEFAULT_EFFECT_SIZE, dest="effect_size",
                         help="standardized effect size calibrating the "
                              "accept cut (0 = plain bilateral test)")
    _add_common(regress)

    power = sub.add_parser("power", help="analytic decision probability curves")
    power.add_argument("--test", choices=("z", "t_one", "t_two", "effect"),
                       default="z")
    power.add_argument("--mu0", type=float, default=0.0)
    power.add_argument("--sigma", type=float, default=1.0)
    power.add_argument("--n", type=int, default=10)
    power.add_argument("--grid", help="theta grid as lo:hi:steps")
    power.add_argument("--csv", help="input CSV (for --test effect)")
    power.add_argument("--response", default="Infant.Mortality")
    power.add_argument("--coef", help="covariate name (for --test effect)")
    power.add_argument("--effect-size", type=float,
                       default=DEFAULT_EFFECT_SIZE, dest="effect_size")
    _add_common(power)

    simulate = sub.add_parser("simulate", help="Monte Carlo verification runs")
    simulate.add_argument("--scenario", choices=tuple(_SCENARIOS),
                          required=True)
    simulate.add_argument("--seed", type=int, default=DEFAULT_SEED)
    simulate.add_argument("--reps", type=int,
                          help="replicates (default depends on scenario)")
    _add_common(simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.figures:
        Path(args.figures).mkdir(parents=True, exist_ok=True)
    runner = {"regress": run_regress, "power": run_power,
              "simulate": run_simulate}[args.command]
    try:
        return runner(args, sys.stdout)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
