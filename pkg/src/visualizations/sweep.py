"""
Date: 18-10-2026
Index-jump plot of a Clifford sweep.
"""

from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd


def plot_index_jump(
    df: pd.DataFrame,
    title: str = "Stability index along the Clifford family",
    n: Optional[int] = None
) -> plt.Figure:
    """
    Step plot of weak and strong index against r^2.

    :param df: Sweep table with r2, weak_index, strong_index.
    :param title: Plot title.
    :param n: Hypersurface dimension; draws the n+1 and n+2 reference lines when given.
    :return: Matplotlib Figure.
    """
    df = df.sort_values("r2")
    fig, ax = plt.subplots(figsize=(9, 5))
    ax.step(df["r2"], df["weak_index"], where="mid", color="teal", label="weak index")
    ax.step(df["r2"], df["strong_index"], where="mid", color="darkorange", alpha=0.7, label="strong index")
    ax.plot(df["r2"], df["weak_index"], "o", color="teal", markersize=3)

    if n is not None:
        ax.axhline(n + 1, color="grey", linestyle=":", linewidth=1, label="n+1")
        ax.axhline(n + 2, color="grey", linestyle="--", linewidth=1, label="n+2")

    ax.set_title(title)
    ax.set_xlabel("r^2")
    ax.set_ylabel("index")
    ax.legend(loc="upper center")
    ax.grid(alpha=0.3)
    return fig


def save_index_jump(df: pd.DataFrame, path: Union[str, Path], n: Optional[int] = None) -> Path:
    """Render the sweep plot to a PNG file."""
    path = Path(path)
    fig = plot_index_jump(df, n=n)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
