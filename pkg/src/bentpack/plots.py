"""Figures for the bounds and verify reports.

Uses the non-interactive Agg backend; every function writes one file.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_bounds(reports, path) -> None:
    """log2-count curves for bent functions against n."""
    bent = [r for r in reports if r.kind == "bent"]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if bent:
        ns = [r.n for r in bent]
        ax.plot(ns, [float(r.leading_term_bits) for r in bent], "o-", label="11/32 * 2^n (leading term)")
        ax.plot(ns, [float(r.extras["degree_count_bound"]) for r in bent], "s--", label="degree-count bound")
        fin = [(r.n, float(r.extras["finite_n_decomposition"])) for r in bent if "finite_n_decomposition" in r.extras]
        if fin:
            ax.plot(*zip(*fin), "^:", label="finite-n decomposition")
        known = [(r.n, float(r.known_log2_count)) for r in bent if r.known_log2_count is not None]
        if known:
            ax.plot(*zip(*known), "k*", markersize=10, label="known log2 count")
        meas = [(r.n, r.measured_mean_bits) for r in bent if r.measured_mean_bits is not None]
        if meas:
            ax.plot(*zip(*meas), "rx", markersize=9, label="measured codec mean")
    ax.set_yscale("log", base=2)
    ax.set_xlabel("n")
    ax.set_ylabel("bits")
    ax.set_title("Bent functions: bounds vs known counts")
    ax.legend(fontsize=8)
    _finish(fig, path)


def plot_lengths(records, path, title: str = "Encoded section lengths") -> None:
    """Stacked mean section lengths with a histogram of totals."""
    sections = ["header", "transform", "spectrum", "faces", "pairs"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.8))
    means = [float(np.mean([r[name] for r in records])) for name in sections]
    bottom = 0.0
    for name, m in zip(sections, means):
        ax1.bar([0], [m], bottom=bottom, label=f"{name} ({m:.1f})")
        bottom += m
    ax1.set_xticks([])
    ax1.set_ylabel("mean bits")
    ax1.legend(fontsize=8)
    totals = [r["total"] for r in records]
    ax2.hist(totals, bins=min(30, max(5, len(set(totals)))))
    ax2.set_xlabel("total bits per function")
    ax2.set_ylabel("count")
    fig.suptitle(title)
    _finish(fig, path)
