"""Figure rendering for the report path: PNG files next to the CSV output."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_groundstate_figure(path, r, phi, u):
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax1.plot(r, phi, "-", lw=1.5)
    ax1.set_xlabel("r")
    ax1.set_ylabel(r"$\phi_g(r)$")
    ax1.set_title("ground state")
    ax2.plot(r, u, "-", lw=1.5, color="tab:orange")
    ax2.set_xlabel("r")
    ax2.set_ylabel(r"$\varphi_g(r) = 2\sqrt{\pi}\,r\,\phi_g$")
    ax2.set_title("reduced variables")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_observables_figure(path, times, masses, energies, psi0_abs):
    fig, axes = plt.subplots(3, 1, figsize=(7, 7), sharex=True)
    axes[0].plot(times, masses - masses[0], lw=1.2)
    axes[0].set_ylabel("mass drift")
    axes[1].plot(times, energies, lw=1.2, color="tab:green")
    axes[1].set_ylabel("energy")
    axes[2].plot(times, psi0_abs, lw=1.2, color="tab:red")
    axes[2].set_ylabel(r"$|\psi(0,t)|$")
    axes[2].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_evolution_figure(path, r, snapshots):
    """Waterfall of |psi(r, t)| from the recorded snapshots."""
    times = np.array([t for t, _ in snapshots])
    vals = np.array([np.abs(p) for _, p in snapshots])
    fig, ax = plt.subplots(figsize=(7, 5))
    if len(snapshots) >= 8:
        mesh = ax.pcolormesh(r, times, vals, shading="auto", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=r"$|\psi|$")
        ax.set_ylabel("t")
    else:
        for t, row in zip(times, vals):
            ax.plot(r, row, lw=1.2, label=f"t = {t:g}")
        ax.legend()
        ax.set_ylabel(r"$|\psi|$")
    ax.set_xlabel("r")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sweep_figure(path, h_values, sup_errors, l2_errors):
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    pos = np.asarray(sup_errors) > 0
    ax.loglog(np.asarray(h_values)[pos], np.asarray(sup_errors)[pos], "o-", label="sup error")
    pos = np.asarray(l2_errors) > 0
    ax.loglog(np.asarray(h_values)[pos], np.asarray(l2_errors)[pos], "s--", label="L2 error")
    ax.set_xlabel(r"$h_r$")
    ax.set_ylabel("error vs benchmark")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
