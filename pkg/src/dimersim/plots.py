"""Figure rendering for the CLI report path (opt-in via --plot).

Each helper writes a PNG next to the delimited output; the CSV contract
is unaffected.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def plot_spectrum(curve, path):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(curve.detuning_mhz, curve.signal, label="p01 + p10 + 2 p11", lw=1.5)
    ax.plot(curve.detuning_mhz, curve.p01, label="p01", lw=0.8)
    ax.plot(curve.detuning_mhz, curve.p10, label="p10", lw=0.8)
    ax.plot(curve.detuning_mhz, curve.p11, label="p11", lw=0.8)
    ax.set_xlabel(r"$\Delta_+/2$ (MHz)")
    ax.set_ylabel("steady-state signal")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_trajectory(times, concurrence, populations, path):
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.4, 5.2), sharex=True)
    ax1.plot(times, concurrence, lw=1.2, color="C3")
    ax1.set_ylabel("concurrence")
    for label, pop in populations.items():
        ax2.plot(times, pop, lw=0.9, label=label)
    ax2.set_xlabel("t (us)")
    ax2.set_ylabel("population")
    ax2.legend(frameon=False, fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(grid, path):
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    mesh = ax.pcolormesh(grid.times, grid.axis_values, grid.values,
                         shading="auto", vmin=0.0, vmax=1.0, cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="concurrence")
    ax.set_xlabel("t (us)")
    ax.set_ylabel(grid.axis_name)
    ax.set_title(grid.preset_name, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
