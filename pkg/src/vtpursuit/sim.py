"""Trajectory integration and capture certification.

Agents are holonomic: constant speed, instantaneous heading changes. Each
pursuer flies its phase-1 heading until it reaches the virtual target, then
its phase-2 heading until interception; evaders hold their fixed course.
Within each phase the motion is linear, so positions are advanced in closed
form: the output step only controls sampling density and every pursuer's
switch and interception times are sampled exactly.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from . import apollonius
from .assign import Assignment
from .errors import DegenerateFoci, InfeasibleAssignment
from .scenario import Point2, Scenario


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped positions for one agent, strictly increasing in time."""

    role: str
    agent_id: int
    samples: tuple[tuple[float, Point2], ...]


@dataclass(frozen=True)
class CaptureRecord:
    """Certification data for one pursuer."""

    pursuer: int
    evader: int
    t1: float
    t_f: float
    miss_at_vt: float
    miss_at_intercept: float
    passed: bool


@dataclass(frozen=True)
class CaptureReport:
    """Per-pursuer miss distances at the virtual target and interception.

    ``min_pursuer_separation`` is informational only: pursuers are assumed
    not to collide even when they share a virtual target.
    """

    records: tuple[CaptureRecord, ...]
    tolerance: float
    min_pursuer_separation: float


def _structural_problems(scenario: Scenario, assignment: Assignment) -> list[str]:
    n, m = scenario.n_pursuers, scenario.n_evaders
    problems: list[str] = []
    if len(assignment.choices) != n:
        problems.append(
            f"choice: expected {n} pursuer choices, got {len(assignment.choices)}"
        )
    covered: set[int] = set()
    for i, (j, k) in enumerate(assignment.choices):
        if not (0 <= j < m):
            problems.append(f"choice: pursuer {i} references unknown evader {j}")
            continue
        covered.add(j)
        if k not in assignment.active_vts:
            problems.append(f"activation: pursuer {i} uses inactive candidate {k}")
        if k not in assignment.vt_points:
            problems.append(f"choice: candidate {k} has no coordinates")
    for j in range(m):
        if j not in covered:
            problems.append(f"coverage: evader {j} has no assigned pursuer")
    if len(assignment.active_vts) > scenario.max_virtual_targets:
        problems.append(
            f"cardinality: {len(assignment.active_vts)} active virtual targets "
            f"exceed the cap {scenario.max_virtual_targets}"
        )
    return problems


def _pursuer_position(pursuer, sol, t: float) -> Point2:
    """Closed-form pursuer position at time t under the two-phase plan."""
    if t <= sol.t1:
        return Point2(
            pursuer.position.x + pursuer.speed * t * math.cos(sol.heading_phase1),
            pursuer.position.y + pursuer.speed * t * math.sin(sol.heading_phase1),
        )
    vt = sol.circle.vt
    dt = min(t, sol.t_f) - sol.t1
    return Point2(
        vt.x + pursuer.speed * dt * math.cos(sol.heading_phase2),
        vt.y + pursuer.speed * dt * math.sin(sol.heading_phase2),
    )


def simulate(
    scenario: Scenario,
    assignment: Assignment,
    dt: float = 0.01,
    tolerance: float = 1e-6,
) -> tuple[list[Trajectory], CaptureReport]:
    """Integrate all agents and certify each pursuer's capture.

    Returns trajectories sampled on a shared grid (with every pursuer's
    switch and interception times inserted exactly) and a report of miss
    distances at those events. Raises InfeasibleAssignment when the
    assignment does not fit the scenario.
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    problems = _structural_problems(scenario, assignment)
    if problems:
        raise InfeasibleAssignment("; ".join(problems))

    solutions = []
    for pursuer, (j, k) in zip(scenario.pursuers, assignment.choices):
        vt = assignment.vt_points[k]
        evader = scenario.evaders[j]
        try:
            sol = apollonius.intercept(pursuer, vt, evader)
        except DegenerateFoci:
            sol = apollonius.degenerate_intercept(pursuer, vt, evader)
        solutions.append(sol)

    t_end = max(sol.t_f for sol in solutions)
    events = {0.0, t_end}
    for sol in solutions:
        events.add(sol.t1)
        events.add(sol.t_f)
    steps = int(math.floor(t_end / dt))
    grid = sorted(events | {i * dt for i in range(1, steps + 1)})

    trajectories: list[Trajectory] = []
    for j, evader in enumerate(scenario.evaders):
        samples = tuple((t, apollonius.propagate_evader(evader, t)) for t in grid)
        trajectories.append(Trajectory(role="evader", agent_id=j, samples=samples))
    pursuer_tracks: list[list[tuple[float, Point2]]] = []
    for i, (pursuer, sol) in enumerate(zip(scenario.pursuers, solutions)):
        samples = [(t, _pursuer_position(pursuer, sol, t)) for t in grid if t <= sol.t_f]
        pursuer_tracks.append(samples)
        trajectories.append(Trajectory(role="pursuer", agent_id=i, samples=tuple(samples)))

    records = []
    for i, (pursuer, (j, k), sol) in enumerate(
        zip(scenario.pursuers, assignment.choices, solutions)
    ):
        vt = assignment.vt_points[k]
        at_switch = Point2(
            pursuer.position.x + pursuer.speed * sol.t1 * math.cos(sol.heading_phase1),
            pursuer.position.y + pursuer.speed * sol.t1 * math.sin(sol.heading_phase1),
        )
        miss_vt = at_switch.distance_to(vt)
        evader = scenario.evaders[j]
        p_final = _pursuer_position(pursuer, sol, sol.t_f)
        e_final = apollonius.propagate_evader(evader, sol.t_f)
        miss_int = p_final.distance_to(e_final)
        records.append(
            CaptureRecord(
                pursuer=i,
                evader=j,
                t1=sol.t1,
                t_f=sol.t_f,
                miss_at_vt=miss_vt,
                miss_at_intercept=miss_int,
                passed=miss_vt < tolerance and miss_int < tolerance,
            )
        )

    separation = float("inf")
    n = len(pursuer_tracks)
    for a in range(n):
        pos_a = dict(pursuer_tracks[a])
        for b in range(a + 1, n):
            for t, p_b in pursuer_tracks[b]:
                p_a = pos_a.get(t)
                if p_a is not None:
                    d = p_a.distance_to(p_b)
                    if d < separation:
                        separation = d

    report = CaptureReport(
        records=tuple(records),
        tolerance=tolerance,
        min_pursuer_separation=separation,
    )
    return trajectories, report


def verify_capture(report: CaptureReport, tol: float) -> bool:
    """True iff every pursuer's misses are strictly below tol."""
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0 (got {tol})")
    return all(
        r.miss_at_vt < tol and r.miss_at_intercept < tol for r in report.records
    )


def write_trajectories_csv(trajectories: list[Trajectory], path: str | Path) -> None:
    """Dump trajectories as CSV sorted by (role, id, t)."""
    rows = []
    for traj in trajectories:
        for t, p in traj.samples:
            rows.append((traj.role, traj.agent_id, t, p.x, p.y))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["role", "id", "t", "x", "y"])
        for role, agent_id, t, x, y in rows:
            writer.writerow([role, agent_id, repr(t), repr(x), repr(y)])


def write_capture_csv(report: CaptureReport, path: str | Path) -> None:
    """Dump the capture report as CSV, one row per pursuer."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["pursuer", "evader", "t1", "t_f", "miss_at_vt", "miss_at_intercept", "pass"]
        )
        for r in report.records:
            writer.writerow(
                [
                    r.pursuer,
                    r.evader,
                    repr(r.t1),
                    repr(r.t_f),
                    repr(r.miss_at_vt),
                    repr(r.miss_at_intercept),
                    str(r.passed).lower(),
                ]
            )
