"""Matplotlib renderings of the sweep tables, one PNG per figure kind.

The sweep tables stay the authoritative output; these renderings are a
convenience for eyeballing them and are written next to the delimited
files by the command-line ``sweep --plot`` path.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweeps import CEILING_RHO, Table


def _series(table: Table, family: str, x: str, y: str):
    fam = table.column(family)
    xs = table.column(x)
    ys = table.column(y)
    out: dict[float, tuple[list, list]] = {}
    for key, xv, yv in zip(fam, xs, ys):
        out.setdefault(key, ([], []))
        out[key][0].append(xv)
        out[key][1].append(yv)
    return out


def render_table(table: Table, path: str | Path) -> Path:
    """Render one sweep table to ``path``; the kind is taken from its name."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if table.name == "fig1":
        for beta, (xs, ys) in _series(table, "beta", "rho", "f").items():
            ax.plot(xs, ys, label=rf"$\beta$ = {beta:g}")
        peaks = [(r, f) for r, f, m in zip(
            table.column("rho"), table.column("f"), table.column("is_argmax")) if m]
        peaks.sort()
        ax.plot(*zip(*peaks), color="black", linewidth=1.2)
        ax.set_xlabel(r"load factor $\rho$")
        ax.set_ylabel(r"welfare $f(\rho)$")
    elif table.name == "fig2":
        for a, (xs, ys) in _series(table, "a", "beta", "rho_star").items():
            ax.plot(xs, ys, marker=".", label=f"a = {a:g}")
        ax.axhspan(CEILING_RHO, 1.0, color="gray", alpha=0.2)
        ax.set_xlabel(r"capture probability $\beta$")
        ax.set_ylabel(r"optimal load $\rho^*$")
        ax.set_ylim(0.0, max(table.column("rho_star")) * 1.15)
    elif table.name == "fig3":
        for beta, (xs, ys) in _series(table, "beta", "a", "f_star").items():
            ax.semilogx(xs, ys, label=rf"$\beta$ = {beta:g}")
        ax.set_xlabel("trade-off weight a")
        ax.set_ylabel(r"optimal welfare $f(\rho^*)$")
    elif table.name == "fig4":
        for beta, (xs, ys) in _series(table, "beta", "a", "rho_star").items():
            ax.semilogx(xs, ys, label=rf"$\beta$ = {beta:g}")
        tilde = sorted(set(zip(table.column("a"), table.column("rho_tilde"))))
        ax.semilogx(*zip(*tilde), "k--", label="vanishing-capture limit")
        ax.axhspan(CEILING_RHO, 1.0, color="gray", alpha=0.2)
        ax.set_xlabel("trade-off weight a")
        ax.set_ylabel(r"optimal load $\rho^*$")
        ax.set_ylim(0.0, 0.65)
    else:
        ax.semilogx(table.column("a"), table.column("rho_tilde"), color="black")
        ax.set_xlabel("trade-off weight a")
        ax.set_ylabel(r"asymptotic load $\tilde\rho$")
    if table.name != "asymptote":
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
