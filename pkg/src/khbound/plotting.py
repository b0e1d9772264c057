"""Figures for reports and sweeps, written straight to image files."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _signed_log(x: int) -> float:
    # display only; the matrices themselves stay exact
    return math.copysign(math.log10(1 + abs(x)), x)


def _heatmap(ax, matrix, labels, title):
    data = [[_signed_log(x) for x in row] for row in matrix.rows]
    vmax = max((abs(x) for row in data for x in row), default=1.0) or 1.0
    im = ax.imshow(data, cmap="RdBu_r", vmin=-vmax, vmax=vmax)
    ax.set_title(title)
    ax.set_xticks(range(len(labels)), labels)
    ax.set_yticks(range(len(labels)), labels)
    if len(labels) <= 12:
        for i, row in enumerate(matrix.rows):
            for j, x in enumerate(row):
                text = str(x) if len(str(x)) <= 6 else f"{float(x):.1e}"
                ax.text(j, i, text, ha="center", va="center", fontsize=8)
    return im


def plot_report(report, path) -> None:
    """Cartan matrix and M side by side, titled with the bound."""
    labels = [str(v) for v in range(1, report.params.m)]
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.6))
    _heatmap(axes[0], report.cartan, labels, "Cartan matrix C")
    im = _heatmap(axes[1], report.m_matrix, labels, "M")
    fig.colorbar(im, ax=list(axes), shrink=0.8, label="sign(x) log10(1+|x|)")
    fig.suptitle(f"{report.params.label()}: KH_-1 is a quotient of {report.bound}")
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_kleinian(results, path) -> None:
    ms = [m for m, _ in results]
    orders = [g.torsion_order for _, g in results]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ms, ms, color="0.7", lw=2, label="m")
    ax.plot(ms, orders, "o", ms=4, label="order of coker M")
    ax.set_xlabel("m")
    ax.set_ylabel("order")
    ax.set_title("Type A_{m-1}: cokernel of M")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_sweep(reports, path) -> None:
    names = [",".join(map(str, r.params.a)) for r in reports]
    orders = [r.bound.torsion_order for r in reports]
    fig, ax = plt.subplots(figsize=(max(5, 0.5 * len(reports) + 2), 4))
    bars = ax.bar(range(len(reports)), orders, color="tab:blue")
    for bar, r in zip(bars, reports):
        ax.annotate(str(r.bound), (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=7, rotation=90)
    ax.set_yscale("log")
    ax.set_xticks(range(len(reports)), names, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("torsion order of the bound")
    ax.set_title(f"All weight vectors for m = {reports[0].params.m}" if reports else "")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
