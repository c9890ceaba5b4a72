"""Matplotlib figures for CLI reports (Agg backend, written straight to files)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .core import UNDEF, PartialMagma, PartialRing  # noqa: E402


def _save(fig, directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def _table_axes(ax, table, names, title):
    data = np.ma.masked_equal(np.array(table, dtype=float), UNDEF)
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("#dddddd")
    ax.imshow(data, cmap=cmap, vmin=0, vmax=max(len(names) - 1, 1))
    ax.set_xticks(range(len(names)), names, rotation=90 if len(names) > 6 else 0)
    ax.set_yticks(range(len(names)), names)
    ax.set_title(title)
    if len(names) <= 12:
        for i, row in enumerate(table):
            for j, v in enumerate(row):
                ax.text(j, i, "·" if v == UNDEF else names[v], ha="center", va="center",
                        fontsize=8, color="black" if v == UNDEF else "white")


def cayley_figure(A: PartialMagma, directory: str, stem: str = "tables") -> str:
    """Addition table (grey = undefined) and, for rings, the multiplication table."""
    panels = 2 if isinstance(A, PartialRing) else 1
    fig, axes = plt.subplots(1, panels, figsize=(4.2 * panels, 4))
    axes = np.atleast_1d(axes)
    _table_axes(axes[0], A.add, A.names, f"{A.label or 'A'}: +")
    if panels == 2:
        _table_axes(axes[1], A.mul, A.names, f"{A.label or 'A'}: ×")
    return _save(fig, directory, f"{stem}.png")


def spectrum_figure(X, directory: str, stem: str = "spectrum") -> str:
    """Incidence of basic opens: row a, column p is filled when p ∈ D(a)."""
    A = X.ring
    inc = np.array([[1.0 if i in X.D(a) else 0.0 for i in range(X.size)] for a in A.elements])
    fig, ax = plt.subplots(figsize=(1.2 + 0.8 * max(X.size, 1), 0.9 + 0.35 * A.size))
    if X.size:
        ax.imshow(inc, cmap="Greys", vmin=0, vmax=1, aspect="auto")
        ax.set_xticks(range(X.size), [str(p) for p in X.points], rotation=45, ha="right")
    ax.set_yticks(range(A.size), A.names)
    ax.set_xlabel("prime")
    ax.set_ylabel("a")
    ax.set_title(f"D(a) in Spec {A.label or 'A'}")
    return _save(fig, directory, f"{stem}.png")


def group_figure(G, directory: str, stem: str = "group") -> str:
    n = G.order
    table = [[UNDEF if x is None else x for x in row] for row in G.table]
    fig, ax = plt.subplots(figsize=(min(2 + 0.3 * n, 12), min(2 + 0.3 * n, 12)))
    data = np.ma.masked_equal(np.array(table, dtype=float), UNDEF)
    cmap = plt.get_cmap("tab20").copy()
    cmap.set_bad("#dddddd")
    ax.imshow(data, cmap=cmap)
    ax.set_title(f"{G.label}: order {n}, {100 * G.defined_fraction():.0f}% defined")
    ax.set_xticks([])
    ax.set_yticks([])
    return _save(fig, directory, f"{stem}.png")


def points_figure(rows: list[dict], directory: str, stem: str = "points") -> str:
    """Bars of the three point counts per n."""
    ns = [r["n"] for r in rows]
    x = np.arange(len(ns))
    w = 0.27
    fig, ax = plt.subplots(figsize=(1.5 + 1.1 * len(ns), 3.2))
    for k, (key, lab) in enumerate((("formula", "formula"), ("enumerated", "orbits"), ("glued", "charts"))):
        ax.bar(x + (k - 1) * w, [r[key] for r in rows], w, label=lab)
    ax.set_xticks(x, [f"n={n}" for n in ns])
    ax.set_ylabel("#P^n(F)")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, directory, f"{stem}.png")
