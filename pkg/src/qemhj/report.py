"""PNG figures for the command-line outputs (matplotlib, Agg backend)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

__all__ = ["plot_spectrum", "plot_verify", "plot_wavefunction"]


def _save(fig, path):
    path = Path(path)
    for ax in fig.axes:
        if ax.get_yscale() == "linear":
            ax.ticklabel_format(axis="y", useOffset=False)
    fig.tight_layout()
    # fixed metadata keeps the bytes independent of the matplotlib build date
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_spectrum(rows, path, case: str = ""):
    n = [r["n"] for r in rows]
    fig, ax = plt.subplots(1, 2, figsize=(8, 3.2))
    ax[0].plot(n, [r["energy"] for r in rows], "o-")
    ax[0].set_xlabel("n")
    ax[0].set_ylabel("energy")
    for a in ax:
        a.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax[1].plot(n, [r["quantized_parameter"] for r in rows], "s-", color="C1")
    ax[1].set_xlabel("n")
    ax[1].set_ylabel("quantized parameter")
    if case:
        fig.suptitle(case)
    return _save(fig, path)


def plot_verify(rows, path, case: str = ""):
    n = np.array([r["n"] for r in rows])
    fig, ax = plt.subplots(1, 2, figsize=(8, 3.2))
    ax[0].plot(n, [r["closed_form_energy"] for r in rows], "o", label="closed form")
    ax[0].plot(n, [r["oracle_energy"] for r in rows], "x", ms=9, label="finite difference")
    ax[0].set_xlabel("n")
    ax[0].set_ylabel("energy")
    ax[0].legend()
    for a in ax:
        a.xaxis.set_major_locator(MaxNLocator(integer=True))
    d = np.maximum([r["abs_diff"] for r in rows], 1e-17)
    res = np.maximum([r["max_residual"] for r in rows], 1e-17)
    ax[1].semilogy(n, d, "o-", label="|energy difference|")
    ax[1].semilogy(n, res, "s-", label="max residual")
    ax[1].set_xlabel("n")
    ax[1].legend()
    if case:
        fig.suptitle(case)
    return _save(fig, path)


def plot_wavefunction(columns, data, path, n: int, case: str = ""):
    x = data[:, 0]
    fig, ax = plt.subplots(1, 2, figsize=(8, 3.2))
    ax[0].plot(x, data[:, 1], label="Re phi")
    if np.any(data[:, 2] != 0):
        ax[0].plot(x, data[:, 2], label="Im phi")
    if "eta" in columns:
        ax[0].plot(x, data[:, columns.index("eta")], "--", label="eta")
    ax[0].set_xlabel("x")
    ax[0].legend()
    ip = data[:, 4]
    ok = np.isfinite(ip)
    ax[1].plot(x[ok], ip[ok], color="C2")
    lim = np.percentile(np.abs(ip[ok]), 95) if ok.any() else 1.0
    ax[1].set_ylim(-2 * lim - 1e-12, 2 * lim + 1e-12)
    ax[1].set_xlabel("x")
    ax[1].set_ylabel("Im p")
    fig.suptitle(f"{case} n={n}".strip())
    return _save(fig, path)
