"""Figures written next to the CLI's delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.0),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 120,
}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-stable
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_trend(report, path) -> Path:
    """Value and main term against T (log-log), ratios on a second panel."""
    T = np.array([r.T for r in report.rows])
    values = np.abs([r.value for r in report.rows])
    with plt.rc_context(STYLE):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 4.0))
        ax1.loglog(T, values, "o-", label=f"{report.kind} (slope {report.slope:.3f})")
        if report.main_slope is not None:
            mains = np.abs([r.main_term for r in report.rows])
            ax1.loglog(T, mains, "s--", label=f"main term (slope {report.main_slope:.3f})")
        ax1.set_xlabel("T")
        ax1.set_ylabel("|integral|")
        ax1.legend()
        ratios = [r.ratio for r in report.rows]
        if all(r is not None for r in ratios):
            ax2.semilogx(T, ratios, "o-")
            ax2.axhline(1.0, color="k", lw=0.8)
            ax2.set_ylabel("value / main term")
        else:
            norm = values / (T * np.log(T) ** 9)
            ax2.loglog(T, norm, "o-")
            ax2.set_ylabel("|value| / (T log^9 T)")
        ax2.set_xlabel("T")
        fig.suptitle(f"trend: {report.kind}")
    return _save(fig, path)


def plot_afe_survey(t, residual, path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.semilogx(t, residual, ".", ms=3)
        ax.set_xlabel("t")
        ax.set_ylabel("|E(1/2+it)| / log(2+t)")
        ax.set_title("approximate functional equation residual")
    return _save(fig, path)


def plot_zeta_grid(grid, path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.plot(grid.t, grid.z, lw=0.7)
        ax.axhline(0.0, color="k", lw=0.5)
        ax.set_xlabel("t")
        ax.set_ylabel("Z(t)")
    return _save(fig, path)


def plot_correlations(h, sums, path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.bar(h, sums)
        ax.set_xlabel("h")
        ax.set_ylabel("sum d3(n) d3(n+h)")
    return _save(fig, path)
