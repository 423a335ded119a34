"""Candidate virtual-target lattices and the engagement cost tensor.

The cost of pursuer i capturing evader j via candidate k is

    c[i, j, k] = turn_weight * (pi - theta) + t1 + (t_f - t1)

i.e. the maneuver penalty at the virtual target plus the total transit
time. Degenerate triples (evader sitting exactly on the candidate at the
switch time) are costed with theta := pi and a zero-length second phase, so
the tensor is always dense and finite.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import apollonius
from .apollonius import InterceptSolution
from .errors import DegenerateFoci, InvalidGridSize
from .scenario import Point2, Scenario, VTRegion


@dataclass(frozen=True)
class CandidateSet:
    """An ordered, duplicate-free set of candidate virtual-target points.

    ``lattice_side`` is the side length n when the set is an n-by-n lattice;
    None for merged or hand-built sets. Ordering is deterministic: row-major
    by y then x.
    """

    points: tuple[Point2, ...]
    lattice_side: int | None = None

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class CostTensor:
    """Dense cost tensor over pursuers x evaders x candidates.

    ``costs`` has shape (N, M, K) and is contiguous in k for each (i, j)
    pair. ``solutions[i][j][k]`` caches the intercept geometry behind each
    entry; it is None for synthetic tensors built directly from numbers.
    """

    costs: np.ndarray
    candidates: CandidateSet
    solutions: tuple[tuple[tuple[InterceptSolution, ...], ...], ...] | None = None

    @property
    def dims(self) -> tuple[int, int, int]:
        n, m, k = self.costs.shape
        return n, m, k


def lattice(region: VTRegion, n: int) -> CandidateSet:
    """Uniform n-by-n candidate lattice spanning the region.

    All four region corners are included for n >= 2; n = 1 yields the
    region center. Points are ordered row-major by y then x.
    """
    if n < 1:
        raise InvalidGridSize(f"lattice side must be >= 1 (got {n})")
    if n == 1:
        return CandidateSet(points=(region.center(),), lattice_side=1)
    xs = np.linspace(region.x_min, region.x_max, n)
    ys = np.linspace(region.y_min, region.y_max, n)
    points = tuple(Point2(float(x), float(y)) for y in ys for x in xs)
    return CandidateSet(points=points, lattice_side=n)


def merge_candidates(*sets: CandidateSet) -> CandidateSet:
    """Union of candidate sets, deduplicated and re-sorted row-major.

    Used to build nested refinement sequences: the union of a list of sets
    is a superset of each, so optimal cost is non-increasing along the
    sequence of cumulative unions.
    """
    seen: dict[tuple[float, float], Point2] = {}
    for cs in sets:
        for p in cs.points:
            seen.setdefault((p.x, p.y), p)
    ordered = sorted(seen.values(), key=lambda p: (p.y, p.x))
    return CandidateSet(points=tuple(ordered), lattice_side=None)


def build_cost_tensor(scenario: Scenario, candidates: CandidateSet) -> CostTensor:
    """Assemble the full cost tensor for a scenario and candidate set.

    Every triple is solved independently; two builds of the same inputs are
    bitwise identical.
    """
    n, m, k = scenario.n_pursuers, scenario.n_evaders, len(candidates)
    if k == 0:
        raise InvalidGridSize("candidate set is empty")
    costs = np.empty((n, m, k), dtype=np.float64)
    solutions: list[list[tuple[InterceptSolution, ...]]] = []
    w = scenario.turn_weight
    for i, pursuer in enumerate(scenario.pursuers):
        per_pursuer: list[tuple[InterceptSolution, ...]] = []
        for j, evader in enumerate(scenario.evaders):
            mu = evader.speed / pursuer.speed
            row: list[InterceptSolution] = []
            for kk, vt in enumerate(candidates.points):
                try:
                    sol = apollonius.intercept(pursuer, vt, evader)
                except DegenerateFoci:
                    sol = apollonius.degenerate_intercept(pursuer, vt, evader)
                row.append(sol)
                costs[i, j, kk] = w * (math.pi - sol.theta) + sol.t_f
            per_pursuer.append(tuple(row))
        solutions.append(per_pursuer)
    return CostTensor(
        costs=costs,
        candidates=candidates,
        solutions=tuple(tuple(rows) for rows in solutions),
    )


def write_cost_csv(tensor: CostTensor, path: str | Path) -> None:
    """Dump the tensor as CSV rows ordered lexicographically by (i, j, k)."""
    if tensor.solutions is None:
        raise ValueError("tensor has no cached geometry to dump")
    n, m, k = tensor.dims
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "j", "k", "x_vt", "y_vt", "t1", "tf", "theta", "cost"])
        for i in range(n):
            for j in range(m):
                for kk in range(k):
                    sol = tensor.solutions[i][j][kk]
                    vt = tensor.candidates.points[kk]
                    writer.writerow(
                        [
                            i,
                            j,
                            kk,
                            repr(vt.x),
                            repr(vt.y),
                            repr(sol.t1),
                            repr(sol.t_f),
                            repr(sol.theta),
                            repr(float(tensor.costs[i, j, kk])),
                        ]
                    )
