"""Matplotlib rendering of decision-probability curves and simulation tables."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

_COLORS = {"accept": "tab:green", "agnostic": "tab:gray", "reject": "tab:red"}


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_power_curves(rows: Sequence[tuple[float, float, float, float, float]],
                        path: Path, xlabel: str = "theta") -> Path:
    """Plot (theta, p_accept, p_agnostic, p_reject, power) rows to a file."""
    plt = _pyplot()
    theta = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for idx, name in ((1, "accept"), (2, "agnostic"), (3, "reject")):
        ax.plot(theta, [r[idx] for r in rows], label=f"P({name})",
                color=_COLORS[name])
    ax.plot(theta, [r[4] for r in rows], label="power", color="black",
            linestyle="--", linewidth=1.0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("probability")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="center right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_effect_size_curves(curves: dict, path: Path) -> Path:
    """Per-covariate decision probabilities as functions of the true effect size."""
    plt = _pyplot()
    names = list(curves)
    ncols = min(3, max(1, len(names)))
    nrows = (len(names) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.2 * ncols, 2.6 * nrows),
                             squeeze=False, sharex=True, sharey=True)
    for ax, name in zip(axes.flat, names):
        points = curves[name]
        d = [p[0] for p in points]
        for idx, label in ((1, "accept"), (2, "agnostic"), (3, "reject")):
            ax.plot(d, [p[idx] for p in points], label=label,
                    color=_COLORS[label])
        ax.set_title(name, fontsize=9)
        ax.set_ylim(-0.02, 1.02)
    for ax in axes.flat[len(names):]:
        ax.set_visible(False)
    axes.flat[0].legend(fontsize=7)
    for ax in axes[-1]:
        ax.set_xlabel("Cohen's d")
    for row in axes:
        row[0].set_ylabel("probability")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_sim_rows(rows, path: Path, title: str = "") -> Path:
    """Plot Monte Carlo decision frequencies against the sample size."""
    plt = _pyplot()
    thetas = sorted({r.theta for r in rows})
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for theta in thetas:
        sub = [r for r in rows if r.theta == theta]
        ns = [r.n for r in sub]
        if len(set(ns)) > 1:
            ax.set_xscale("log")
        for field, name in (("p_accept", "accept"), ("p_agnostic", "agnostic"),
                            ("p_reject", "reject")):
            ax.plot(ns, [getattr(r, field) for r in sub], marker="o",
                    label=f"P({name}), theta={theta:g}", color=_COLORS[name],
                    alpha=0.5 + 0.5 * (theta == thetas[0]))
    ax.set_xlabel("n")
    ax.set_ylabel("frequency")
    ax.set_ylim(-0.02, 1.02)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)
