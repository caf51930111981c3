"""Figures written next to the JSON reports of the CLI."""

from __future__ import annotations

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .criterion import CriterionReport  # noqa: E402
from .pade import PadeSystem, remainder_tail  # noqa: E402


def report_figure(width=7.0, height=None):
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    if not height:
        height = width * golden_ratio
    fig, ax = plt.subplots(figsize=(width, height), facecolor="w")
    ax.tick_params(labelsize=10)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    return fig, ax


def _safe_log10(v: Fraction) -> float:
    v = abs(v)
    return math.log10(v.numerator) - math.log10(v.denominator)


def plot_certificate(report: CriterionReport, path: str) -> str:
    """V as a function of log|beta| with alpha and x fixed; V is affine with slope 1 over Q."""
    thr = float(report.log_beta_threshold.mid)
    lb = float(report.log_beta.mid)
    lo = min(lb, thr) - 0.1 * max(abs(thr), 1.0)
    hi = max(lb, thr) + 0.1 * max(abs(thr), 1.0)
    fig, ax = report_figure()
    ax.plot([lo, hi], [lo - thr, hi - thr], color="k", lw=1.5, label="V")
    ax.axhline(0, color="0.6", lw=0.8)
    ax.axvspan(thr, hi, color="tab:green", alpha=0.12, label="independent")
    ax.axvline(thr, color="tab:green", lw=1, ls="--")
    ax.plot([lb], [float(report.V.mid)], "o", color="tab:red", label=f"log|beta| = {lb:.6g}")
    ax.set_xlabel("log|beta|")
    ax.set_ylabel("V")
    ax.set_title(f"r = {report.params.r}, m = {report.params.m}: threshold {thr:.6g}", fontsize=11)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_remainders(system: PadeSystem, K: int, path: str) -> str:
    """log10 |coefficient of 1/z^(k+1)| of every remainder; vanishing ones sit on the floor."""
    params = system.params
    tails = {}
    for l in range(params.rm + 1):
        for i, s in params.pairs():
            tails[l, i, s] = remainder_tail(params, l, i, s, K, system.P[l]).coefficients
    logs = [_safe_log10(c) for t in tails.values() for c in t if c]
    floor = (min(logs) if logs else 0.0) - 2.0
    fig, ax = report_figure()
    for (l, i, s), coeffs in sorted(tails.items()):
        ys = [_safe_log10(c) if c else floor for c in coeffs]
        ax.plot(range(1, len(coeffs) + 1), ys, marker=".", lw=0.8, alpha=0.7)
    ax.axvline(params.n + 0.5, color="tab:red", ls="--", lw=1, label=f"order n+1 = {params.n + 1}")
    ax.axhline(floor, color="0.6", lw=0.8)
    ax.set_xlabel("k (coefficient of 1/z^k)")
    ax.set_ylabel("log10 |coefficient|  (zero drawn at floor)")
    ax.set_title(f"remainders, r={params.r} m={params.m} n={params.n} x={params.x}", fontsize=11)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
