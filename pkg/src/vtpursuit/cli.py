"""Command-line front end.

Subcommands:

- ``solve``: load a scenario, build the candidate lattice and cost tensor,
  solve the assignment to proven optimality, and write the assignment and
  solver reports (plus the cost tensor on request).
- ``sweep``: run solves across a list of lattice sides and write one CSV
  row per grid, with trend figures rendered next to the CSV; ``--nested``
  additionally sweeps cumulative unions of the lattices so optimal cost is
  provably non-increasing.
- ``validate``: re-simulate a solved assignment and certify every capture.
- ``render``: draw the engagement geometry to SVG.

Exit codes: 0 success (proven optimal where applicable), 1 input or
validation failure, 2 solver stopped at its limits with a nonzero gap.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import render, sim
from .assign import (
    Assignment,
    AssignmentProblem,
    check_feasible,
    solve_detailed,
)
from .cost import CandidateSet, build_cost_tensor, lattice, merge_candidates, write_cost_csv
from .errors import PursuitError
from .scenario import Point2, Scenario, load_scenario, with_max_virtual_targets

SWEEP_HEADER = ["candidate_count", "lattice_side", "optimal_cost", "solve_time_s", "node_count"]


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _load(scenario_path: str, mv_override: int | None) -> Scenario:
    scenario = load_scenario(scenario_path)
    if mv_override is not None:
        scenario = with_max_virtual_targets(scenario, mv_override)
    return scenario


def _assignment_document(
    scenario_path: str, grid_n: int, scenario: Scenario, assignment: Assignment
) -> dict:
    return {
        "scenario": str(scenario_path),
        "grid_n": grid_n,
        "max_virtual_targets": scenario.max_virtual_targets,
        "total_cost": assignment.total_cost,
        "choices": [
            {
                "pursuer": i,
                "pursuer_id": scenario.pursuers[i].id,
                "evader": j,
                "evader_id": scenario.evaders[j].id,
                "candidate": k,
                "vt": {"x": assignment.vt_points[k].x, "y": assignment.vt_points[k].y},
            }
            for i, (j, k) in enumerate(assignment.choices)
        ],
        "active_vts": [
            {"candidate": k, "x": assignment.vt_points[k].x, "y": assignment.vt_points[k].y}
            for k in sorted(assignment.active_vts)
        ],
    }


def _read_assignment(path: str | Path) -> tuple[dict, Assignment]:
    """Parse an assignment file back into an Assignment."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise PursuitError(f"cannot read assignment file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PursuitError(f"assignment file {path} is not valid JSON: {exc}") from exc
    try:
        choices = tuple((c["evader"], c["candidate"]) for c in doc["choices"])
        vt_points = {
            c["candidate"]: Point2(float(c["vt"]["x"]), float(c["vt"]["y"]))
            for c in doc["choices"]
        }
        for entry in doc["active_vts"]:
            vt_points[entry["candidate"]] = Point2(float(entry["x"]), float(entry["y"]))
        assignment = Assignment(
            choices=choices,
            active_vts=frozenset(entry["candidate"] for entry in doc["active_vts"]),
            total_cost=float(doc["total_cost"]),
            vt_points=vt_points,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PursuitError(f"assignment file {path} is malformed: {exc}") from exc
    return doc, assignment


def _write_json(doc: dict, path: Path) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n")


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        scenario = _load(args.scenario, args.mv)
        candidates = lattice(scenario.region, args.grid)
        tensor = build_cost_tensor(scenario, candidates)
        problem = AssignmentProblem(tensor, scenario.max_virtual_targets)
        outcome = solve_detailed(
            problem, node_limit=args.node_limit, time_limit=args.time_limit
        )
    except PursuitError as exc:
        return _fail(str(exc))

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    assignment = outcome.assignment
    _write_json(
        _assignment_document(args.scenario, args.grid, scenario, assignment),
        out_dir / "assignment.json",
    )
    _write_json(
        {
            "optimal_cost": assignment.total_cost,
            "proven_optimal": outcome.optimal,
            "gap": outcome.gap,
            "gap_abs": outcome.gap_abs,
            "node_count": outcome.node_count,
            "lp_iterations": outcome.lp_iterations,
            "wall_time_s": outcome.wall_time,
            "best_bound": outcome.best_bound,
        },
        out_dir / "solver_report.json",
    )
    if args.dump_tensor:
        write_cost_csv(tensor, out_dir / "cost_tensor.csv")

    print(f"candidates: {len(candidates)} (grid {args.grid}x{args.grid})")
    print(f"total cost: {assignment.total_cost:.9f}")
    for i, (j, k) in enumerate(assignment.choices):
        vt = assignment.vt_points[k]
        print(f"  pursuer {i} -> evader {j} via candidate {k} at ({vt.x:.4f}, {vt.y:.4f})")
    print(f"active virtual targets: {sorted(assignment.active_vts)}")
    print(
        f"nodes: {outcome.node_count}, lp iterations: {outcome.lp_iterations}, "
        f"wall time: {outcome.wall_time:.3f}s, gap: {outcome.gap:.3g}"
    )
    if not outcome.optimal:
        print("warning: stopped at search limits before proving optimality", file=sys.stderr)
        return 2
    return 0


def _sweep_rows(scenario: Scenario, grids: list[int], nested: bool) -> list[dict]:
    rows = []
    union: CandidateSet | None = None
    for n in grids:
        cands = lattice(scenario.region, n)
        if nested:
            union = cands if union is None else merge_candidates(union, cands)
            cands = union
        tensor = build_cost_tensor(scenario, cands)
        problem = AssignmentProblem(tensor, scenario.max_virtual_targets)
        started = time.perf_counter()
        outcome = solve_detailed(problem)
        elapsed = time.perf_counter() - started
        if not outcome.optimal:
            raise PursuitError(f"sweep grid {n}: solver stopped with gap {outcome.gap}")
        rows.append(
            {
                "candidate_count": len(cands),
                "lattice_side": n,
                "optimal_cost": outcome.assignment.total_cost,
                "solve_time_s": elapsed,
                "node_count": outcome.node_count,
            }
        )
    return rows


def _write_sweep_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_HEADER)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        grids = [int(part) for part in args.grids.split(",") if part.strip()]
        if not grids or any(n < 1 for n in grids):
            return _fail(f"invalid grid list {args.grids!r}: sides must be integers >= 1")
        scenario = _load(args.scenario, args.mv)
        out_path = Path(args.out)
        rows = _sweep_rows(scenario, grids, nested=False)
        _write_sweep_csv(rows, out_path)
        written = [out_path]
        if not args.no_figures:
            written += render.render_sweep_trends(rows, out_path.with_suffix(""))
        if args.nested:
            nested_rows = _sweep_rows(scenario, grids, nested=True)
            nested_path = out_path.with_name(out_path.stem + "_nested" + out_path.suffix)
            _write_sweep_csv(nested_rows, nested_path)
            written.append(nested_path)
    except PursuitError as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))
    for path in written:
        print(f"wrote {path}")
    return 0


def _consistent_with_lattice(doc: dict, scenario: Scenario, assignment: Assignment) -> list[str]:
    """Cross-check the assignment file against the scenario and its lattice."""
    problems = []
    grid_n = doc.get("grid_n")
    if isinstance(grid_n, int) and grid_n >= 1:
        cands = lattice(scenario.region, grid_n)
        for k, p in assignment.vt_points.items():
            if not (0 <= k < len(cands)):
                problems.append(f"candidate {k} outside the {grid_n}x{grid_n} lattice")
                continue
            q = cands.points[k]
            if abs(q.x - p.x) > 1e-9 or abs(q.y - p.y) > 1e-9:
                problems.append(
                    f"candidate {k} coordinates ({p.x}, {p.y}) do not match the "
                    f"lattice point ({q.x}, {q.y})"
                )
        try:
            tensor = build_cost_tensor(scenario, cands)
            problem = AssignmentProblem(tensor, scenario.max_virtual_targets)
            problems.extend(check_feasible(assignment, problem))
        except PursuitError as exc:
            problems.append(str(exc))
    return problems


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        scenario = _load(args.scenario, None)
        doc, assignment = _read_assignment(args.assignment)
        problems = _consistent_with_lattice(doc, scenario, assignment)
        if problems:
            return _fail(
                "assignment file is inconsistent with the scenario: "
                + "; ".join(problems)
            )
        trajectories, report = sim.simulate(
            scenario, assignment, dt=args.dt, tolerance=args.tol
        )
    except PursuitError as exc:
        return _fail(str(exc))

    report_path = (
        Path(args.report)
        if args.report
        else Path(args.assignment).with_suffix(".capture.csv")
    )
    sim.write_capture_csv(report, report_path)
    if args.trajectories:
        sim.write_trajectories_csv(trajectories, Path(args.trajectories))

    for r in report.records:
        print(
            f"pursuer {r.pursuer} -> evader {r.evader}: t1={r.t1:.6f} tf={r.t_f:.6f} "
            f"miss_at_vt={r.miss_at_vt:.3e} miss_at_intercept={r.miss_at_intercept:.3e} "
            f"{'pass' if r.passed else 'FAIL'}"
        )
    print(f"minimum pursuer separation: {report.min_pursuer_separation:.6f} DU")
    if not sim.verify_capture(report, args.tol):
        print(f"validation failed at tolerance {args.tol} DU", file=sys.stderr)
        return 1
    print(f"all pursuers pass at tolerance {args.tol} DU")
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    try:
        scenario = _load(args.scenario, None)
        doc, assignment = _read_assignment(args.assignment)
        grid_n = doc.get("grid_n")
        candidates = None
        if isinstance(grid_n, int) and grid_n >= 1:
            candidates = lattice(scenario.region, grid_n)
        render.render_engagement(scenario, assignment, candidates, args.out)
    except PursuitError as exc:
        return _fail(str(exc))
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vtpursuit",
        description=(
            "Place virtual targets and assign pursuers to evaders with "
            "minimum team energy."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one scenario at a given lattice size")
    p_solve.add_argument("--scenario", required=True, help="scenario JSON file")
    p_solve.add_argument("--grid", type=int, required=True, help="lattice side n (n*n candidates)")
    p_solve.add_argument("--mv", type=int, default=None, help="override max virtual targets")
    p_solve.add_argument("--out", default=".", help="output directory")
    p_solve.add_argument("--dump-tensor", action="store_true", help="also write cost_tensor.csv")
    p_solve.add_argument("--node-limit", type=int, default=10_000_000)
    p_solve.add_argument("--time-limit", type=float, default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="solve across several lattice sizes")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--grids", required=True, help="comma-separated lattice sides")
    p_sweep.add_argument("--mv", type=int, default=None)
    p_sweep.add_argument("--nested", action="store_true",
                         help="also sweep cumulative lattice unions")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--no-figures", action="store_true",
                         help="skip the trend figures next to the CSV")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="re-simulate a solved assignment")
    p_val.add_argument("--scenario", required=True)
    p_val.add_argument("--assignment", required=True, help="assignment JSON from solve")
    p_val.add_argument("--tol", type=float, default=1e-6, help="capture tolerance (DU)")
    p_val.add_argument("--dt", type=float, default=0.01, help="output sampling step (TU)")
    p_val.add_argument("--report", default=None, help="capture report CSV path")
    p_val.add_argument("--trajectories", default=None, help="trajectory dump CSV path")
    p_val.set_defaults(func=cmd_validate)

    p_render = sub.add_parser("render", help="draw the engagement to SVG")
    p_render.add_argument("--scenario", required=True)
    p_render.add_argument("--assignment", required=True)
    p_render.add_argument("--out", required=True, help="output SVG path")
    p_render.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
