"""Plot a relax trajectory written by ``esbgklab relax``.

Usage:
    python scripts/plot_trajectory.py relax.csv [--save relax.png]

Needs the ``plot`` extra (matplotlib).
"""
import argparse
import matplotlib.pyplot as plt
import numpy as np
from esbgklab.cli_clean import _read_csv


def plot_relaxation(path: str):
    frame = _read_csv(path)
    t = frame["t"].to_numpy()
    fig, axs = plt.subplots(3, 1, sharex=True, figsize=(6, 8))

    ax = axs[0]
    ax.semilogy(t, frame["rel_entropy"], "b*-", label="H(f | M_0)")
    ax.semilogy(t, frame["rel_entropy_bound"], "k--", label="proved envelope")
    ax.semilogy(t, np.maximum(frame["D_nu"], 1e-300), "r", label="D_nu")
    ax.legend()

    ax = axs[1]
    for key in ("xx", "yy", "zz"):
        ax.plot(t, frame[f"Theta_{key}"], label=f"Theta_{key}")
    ax.plot(t, frame["T"], "k:", label="T")
    ax.legend()

    ax = axs[2]
    ax.plot(t, frame["l1_to_maxwellian"], "g*-", label="||f - M_0||_1")
    ax.plot(t, frame["l1_bound"], "k--", label="L1 envelope")
    ax.set_xlabel("t")
    ax.legend()

    plt.tight_layout()
    return fig


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Plot the entropy and stress history of a relax run.")
    parser.add_argument("path", help="trajectory CSV")
    parser.add_argument("--save", metavar="PNG", help="write the figure instead of showing it")
    args = parser.parse_args()
    fig = plot_relaxation(args.path)
    if args.save:
        fig.savefig(args.save, dpi=150)
    else:
        plt.show()
