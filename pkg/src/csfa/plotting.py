"""Figures for enumeration reports (written to files, never shown)."""

from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def complexity_histogram(result, path, title: str | None = None) -> None:
    """Bar chart of monoid sizes over the sweep; the 2n(n+1) bar is highlighted."""
    counts = Counter(r.complexity for r in result.records)
    sizes = sorted(counts)
    fig, ax = plt.subplots(figsize=(6, 3.6))
    bars = ax.bar([str(s) for s in sizes], [counts[s] for s in sizes], color="0.35")
    if result.bound in counts:
        bars[sizes.index(result.bound)].set_color("tab:red")
    ax.set_xlabel("|M| (syntactic complexity)")
    ax.set_ylabel("instances")
    ax.set_title(title or f"two-bpi binary CSFA, n = {result.n} "
                          f"(2n(n+1) = {result.bound})")
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

