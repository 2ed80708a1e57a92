"""Render the CSV output of `cppcopula figures` as PNG scatter plots (needs matplotlib).

    python -m cppcopula figures --out figures
    python scripts/plot_figures.py figures
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def scatter_panel(ax, path, title):
    pts = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if pts.size:
        ax.scatter(pts[:, 0], pts[:, 1], s=1.5, c="k")
    ax.set(xlim=(0, 1), ylim=(0, 1), aspect="equal", title=title)
    ax.set_xticks([0, 0.5, 1])
    ax.set_yticks([0, 0.5, 1])


def figure(folder, pattern, out, title_of):
    files = sorted(folder.glob(pattern), key=lambda p: title_of(p))
    if not files:
        return
    cols = min(4, len(files))
    rows = -(-len(files) // cols)
    fig, axes = plt.subplots(rows, cols, figsize=(3 * cols, 3 * rows), squeeze=False)
    for ax in axes.flat[len(files):]:
        ax.axis("off")
    for ax, f in zip(axes.flat, files):
        scatter_panel(ax, f, title_of(f))
    fig.tight_layout()
    fig.savefig(folder / out, dpi=150)
    plt.close(fig)


def main(folder="figures"):
    folder = Path(folder)
    figure(folder, "fig1_*.csv", "fig1.png", lambda p: p.stem.removeprefix("fig1_"))
    figure(folder, "fig2_*.csv", "fig2.png", lambda p: p.stem.removeprefix("fig2_"))
    figure(folder, "fig3_dots_*.csv", "fig3.png", lambda p: p.stem.removeprefix("fig3_dots_"))


if __name__ == "__main__":
    main(*sys.argv[1:])
