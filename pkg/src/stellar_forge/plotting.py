"""Constellation and sweep figures, rendered deterministically to SVG.

The SVG backend is pinned (fixed hash salt, no date metadata) so that
identical inputs produce byte-identical files.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .convergence import SweepRecord
from .majorana import Constellation

matplotlib.rcParams["svg.hashsalt"] = "stellar-forge"

_SVG_METADATA = {"Date": None}


def save_svg(fig, path: str) -> None:
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)


def constellation_figure(con: Constellation, title: Optional[str] = None):
    """Planar scatter (scaled coordinate, localization disk marked) plus a
    theta-phi panel; marker area tracks multiplicity."""
    fig, (ax_plane, ax_sphere) = plt.subplots(1, 2, figsize=(9.6, 4.4))
    xs = [r.z.real for r in con.roots]
    ys = [r.z.imag for r in con.roots]
    mults = [r.multiplicity for r in con.roots]
    sizes = [20.0 * m for m in mults]
    ax_plane.scatter(xs, ys, s=sizes, facecolors="none", edgecolors="tab:blue")
    if con.n_total > 0:
        cv_radius = con.n_total**0.25
        angle = np.linspace(0.0, 2 * math.pi, 256)
        ax_plane.plot(
            cv_radius * np.cos(angle),
            cv_radius * np.sin(angle),
            color="tab:red",
            linewidth=0.8,
            label=r"$|z| = N^{1/4}$",
        )
        ax_plane.legend(loc="upper right", fontsize=8)
    ax_plane.axhline(0.0, color="0.85", linewidth=0.5, zorder=0)
    ax_plane.axvline(0.0, color="0.85", linewidth=0.5, zorder=0)
    ax_plane.set_xlabel("Re z (scaled)")
    ax_plane.set_ylabel("Im z (scaled)")
    ax_plane.set_aspect("equal", adjustable="datalim")

    pts = [(r.spherical.theta, r.spherical.phi, r.multiplicity) for r in con.roots]
    if con.at_infinity_multiplicity:
        pts.append((math.pi, 0.0, con.at_infinity_multiplicity))
    if pts:
        thetas, phis, ms = zip(*pts)
        ax_sphere.scatter(
            phis, thetas, s=[20.0 * m for m in ms], facecolors="none",
            edgecolors="tab:green",
        )
    ax_sphere.set_xlim(-0.2, 2 * math.pi + 0.2)
    ax_sphere.set_ylim(math.pi + 0.15, -0.15)  # north pole on top
    ax_sphere.set_xlabel(r"$\phi$")
    ax_sphere.set_ylabel(r"$\theta$")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def sweep_figure(records: Sequence[SweepRecord], title: Optional[str] = None):
    """max matched distance (or escape ratio) against N, log-log."""
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    ns = [rec.n_total for rec in records]
    if records and "escape_ratio" in records[0].params:
        ys = [rec.params["escape_ratio"] for rec in records]
        label = "root modulus / localization radius"
    else:
        ys = [rec.max_match_distance for rec in records]
        label = "max matched root distance"
    positive = [(n, y) for n, y in zip(ns, ys) if y > 0]
    if positive:
        ax.loglog(*zip(*positive), marker="o", color="tab:blue")
    else:
        ax.plot(ns, ys, marker="o", color="tab:blue")
    ax.set_xlabel("N")
    ax.set_ylabel(label)
    ax.grid(True, which="both", color="0.9", linewidth=0.5)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig
