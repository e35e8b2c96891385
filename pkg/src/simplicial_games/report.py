"""Figures and delimited summaries written next to CLI output."""

import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_pset(table, path, title=None):
    """Draw the P-positions of a nim table; supports 1 to 3 vertices."""
    cx = table.complex
    names = [f"stones on {v}" for v in cx.vertices]
    pts = np.array(table.pset(), dtype=int).reshape(-1, cx.n)
    title = title or "P-positions of nim on " + " ".join(cx.format_face(f) for f in cx.maximal_faces)
    if cx.n == 1:
        fig, ax = plt.subplots(figsize=(6, 1.8))
        ax.scatter(pts[:, 0], np.zeros(len(pts)), marker="s", color="k")
        ax.set_xlim(-0.5, table.bound[0] + 0.5)
        ax.set_yticks([])
        ax.set_xlabel(names[0])
    elif cx.n == 2:
        fig, ax = plt.subplots(figsize=(5, 5))
        ax.imshow(table.table.T, origin="lower", cmap="Greys", vmin=0, vmax=1.4)
        ax.set_xlabel(names[0])
        ax.set_ylabel(names[1])
        ax.set_xticks(range(table.bound[0] + 1))
        ax.set_yticks(range(table.bound[1] + 1))
    elif cx.n == 3:
        fig = plt.figure(figsize=(6, 6))
        ax = fig.add_subplot(projection="3d")
        ax.scatter(pts[:, 0], pts[:, 1], pts[:, 2], color="k", depthshade=True)
        ax.set_xticks(range(table.bound[0] + 1))
        ax.set_yticks(range(table.bound[1] + 1))
        ax.set_zticks(range(table.bound[2] + 1))
        ax.set_xlabel(names[0])
        ax.set_ylabel(names[1])
        ax.set_zlabel(names[2])
        ax.set_box_aspect(None, zoom=0.85)
    else:
        raise ValueError(f"can only plot complexes on 1 to 3 vertices, not {cx.n}")
    ax.set_title(title, fontsize=10)
    _finish(fig, path)


def write_results_csv(results, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "checked", "mismatches", "seconds", "first_counterexample"])
        for r in results:
            w.writerow([r.name, r.checked, r.mismatches, f"{r.seconds:.3f}", r.first or ""])


def plot_results(results, path):
    fig, ax = plt.subplots(figsize=(8, 0.5 * len(results) + 1.2))
    y = np.arange(len(results))
    colors = ["tab:green" if r.ok else "tab:red" for r in results]
    ax.barh(y, [max(r.checked, 1) for r in results], color=colors)
    ax.set_xscale("log")
    ax.set_xlim(0.8, 20 * max(max(r.checked, 1) for r in results))
    ax.set_yticks(y)
    ax.set_yticklabels([r.name for r in results], fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("cases checked (log scale)")
    for yi, r in zip(y, results):
        ax.text(max(r.checked, 1), yi, f" {r.mismatches} mismatches", va="center", fontsize=8)
    _finish(fig, path)
