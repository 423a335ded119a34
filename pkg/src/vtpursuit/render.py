"""Engagement geometry and sweep-trend figures, rendered to SVG.

SVG output is byte-deterministic for fixed inputs: the renderer pins the
figure hash salt and strips the creation date, so repeated runs diff clean.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Circle as CirclePatch
from matplotlib.patches import Rectangle

from . import apollonius
from .assign import Assignment
from .cost import CandidateSet
from .errors import DegenerateFoci
from .scenario import Scenario

_HASH_SALT = "vtpursuit"

_PURSUER_COLOR = "#1f77b4"
_EVADER_COLOR = "#d62728"
_VT_COLOR = "#2ca02c"
_CIRCLE_COLOR = "#9467bd"


def save_svg(fig: Figure, path: str | Path) -> None:
    """Write a figure as SVG with deterministic ids and no timestamp."""
    with matplotlib.rc_context({"svg.hashsalt": _HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def render_engagement(
    scenario: Scenario,
    assignment: Assignment,
    candidates: CandidateSet | None,
    out_path: str | Path,
) -> None:
    """Draw the full engagement picture and save it as SVG.

    Shows pursuer and evader starts, evader courses, the candidate lattice
    (faint), the active virtual targets, each pursuer's two-segment path,
    the Apollonius circle of each chosen triple, and the interception
    points.
    """
    fig = Figure(figsize=(8.0, 8.0))
    ax = fig.add_subplot(1, 1, 1)

    region = scenario.region
    ax.add_patch(
        Rectangle(
            (region.x_min, region.y_min),
            region.x_max - region.x_min,
            region.y_max - region.y_min,
            fill=False,
            edgecolor="0.75",
            linewidth=0.8,
            linestyle=":",
            zorder=1,
        )
    )
    if candidates is not None:
        xs = [p.x for p in candidates.points]
        ys = [p.y for p in candidates.points]
        ax.plot(xs, ys, ".", color="0.85", markersize=2.0, zorder=1)

    solutions = []
    t_end = 0.0
    for pursuer, (j, k) in zip(scenario.pursuers, assignment.choices):
        vt = assignment.vt_points[k]
        evader = scenario.evaders[j]
        try:
            sol = apollonius.intercept(pursuer, vt, evader)
        except DegenerateFoci:
            sol = apollonius.degenerate_intercept(pursuer, vt, evader)
        solutions.append(sol)
        t_end = max(t_end, sol.t_f)

    for j, evader in enumerate(scenario.evaders):
        end = apollonius.propagate_evader(evader, t_end)
        ax.plot(
            [evader.position.x, end.x],
            [evader.position.y, end.y],
            color=_EVADER_COLOR,
            linewidth=0.9,
            linestyle="--",
            zorder=2,
        )
        ax.plot(
            evader.position.x,
            evader.position.y,
            "s",
            color=_EVADER_COLOR,
            markersize=7,
            zorder=5,
        )
        ax.annotate(
            f"E{j}",
            (evader.position.x, evader.position.y),
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=9,
            color=_EVADER_COLOR,
        )

    for i, (pursuer, sol) in enumerate(zip(scenario.pursuers, solutions)):
        vt = sol.circle.vt
        ax.plot(
            [pursuer.position.x, vt.x, sol.intercept.x],
            [pursuer.position.y, vt.y, sol.intercept.y],
            color=_PURSUER_COLOR,
            linewidth=1.3,
            zorder=3,
        )
        if sol.circle.radius > 0:
            ax.add_patch(
                CirclePatch(
                    (sol.circle.origin.x, sol.circle.origin.y),
                    sol.circle.radius,
                    fill=False,
                    edgecolor=_CIRCLE_COLOR,
                    linewidth=0.7,
                    linestyle="--",
                    zorder=2,
                )
            )
        ax.plot(
            pursuer.position.x,
            pursuer.position.y,
            "^",
            color=_PURSUER_COLOR,
            markersize=8,
            zorder=5,
        )
        ax.annotate(
            f"P{i}",
            (pursuer.position.x, pursuer.position.y),
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=9,
            color=_PURSUER_COLOR,
        )
        ax.plot(
            sol.intercept.x,
            sol.intercept.y,
            "x",
            color="black",
            markersize=7,
            zorder=6,
        )

    for k in sorted(assignment.active_vts):
        vt = assignment.vt_points[k]
        ax.plot(vt.x, vt.y, "o", color=_VT_COLOR, markersize=9, fillstyle="none",
                markeredgewidth=1.8, zorder=6)

    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x (DU)")
    ax.set_ylabel("y (DU)")
    ax.set_title(
        f"{scenario.n_pursuers} pursuers / {scenario.n_evaders} evaders, "
        f"{len(assignment.active_vts)} virtual targets, "
        f"total cost {assignment.total_cost:.6f}"
    )
    ax.grid(True, linewidth=0.3, alpha=0.5)
    save_svg(fig, out_path)


def render_sweep_trends(rows: list[dict], out_prefix: str | Path) -> list[Path]:
    """Plot solve time and optimal cost against candidate count.

    ``rows`` are sweep-row dicts. Writes ``<prefix>_time.svg`` and
    ``<prefix>_cost.svg`` next to the sweep CSV and returns the paths.
    """
    out_prefix = Path(out_prefix)
    counts = [r["candidate_count"] for r in rows]
    times = [r["solve_time_s"] for r in rows]
    costs = [r["optimal_cost"] for r in rows]

    written = []
    for suffix, values, label in (
        ("time", times, "solve time (s)"),
        ("cost", costs, "optimal cost"),
    ):
        fig = Figure(figsize=(6.0, 4.0))
        ax = fig.add_subplot(1, 1, 1)
        ax.plot(counts, values, "o-", color=_PURSUER_COLOR)
        ax.set_xscale("log")
        ax.set_xlabel("candidate virtual targets")
        ax.set_ylabel(label)
        ax.grid(True, which="both", linewidth=0.3, alpha=0.5)
        path = out_prefix.with_name(out_prefix.name + f"_{suffix}.svg")
        save_svg(fig, path)
        written.append(path)
    return written
