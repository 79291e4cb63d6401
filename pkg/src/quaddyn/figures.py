"""Figure rendering for the sweep tables; one PNG next to each CSV report."""
from __future__ import annotations

from .operator_s import (
    DISK_Z1_CENTER,
    DISK_Z1_RADIUS,
    DISK_Z23_CENTER,
    DISK_Z23_RADIUS,
)


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _two_branch_figure(rows, names, title, path):
    plt = _plt()
    a = [r.A for r in rows]
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for idx, name in enumerate(names):
        pts = [r[idx + 1] for r in rows]
        ax_re.plot(a, [p.real for p in pts], lw=1.0, label=name)
        ax_im.plot(a, [p.imag for p in pts], lw=1.0, label=name)
    ax_re.set_ylabel("real part")
    ax_im.set_ylabel("imaginary part")
    ax_im.set_xlabel("A")
    ax_re.set_title(title)
    ax_re.legend(loc="best", fontsize="small")
    ax_re.grid(True, alpha=0.3)
    ax_im.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_fixed_sweep(rows, path):
    return _two_branch_figure(rows, ("z2", "z3"), "strange fixed points over real A", path)


def plot_critical_sweep(rows, path):
    return _two_branch_figure(rows, ("zc1", "zc2"), "free critical points over real A", path)


def plot_stability_profile(rows, path):
    plt = _plt()
    a = [r.A for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(a, [r.s1_z1 for r in rows], lw=1.0, label="min(|S'(z1)|, 1)")
    ax.plot(a, [r.s1_z23 for r in rows], lw=1.0, label="min(|S'(z2,3)|, 1)")
    lo, hi = min(a), max(a)
    for c, r, color in (
        (DISK_Z1_CENTER, DISK_Z1_RADIUS, "tab:blue"),
        (DISK_Z23_CENTER, DISK_Z23_RADIUS, "tab:orange"),
    ):
        if c + r >= lo and c - r <= hi:
            ax.axvspan(c - r, c + r, color=color, alpha=0.15)
    ax.set_xlabel("A")
    ax.set_ylabel("clamped multiplier modulus")
    ax.set_title("stability profile of the strange fixed points")
    ax.legend(loc="best", fontsize="small")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
