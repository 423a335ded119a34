"""Virtual-target placement and pursuer-evader assignment.

Given faster pursuers, constant-course evaders, and a rectangular region
for candidate virtual targets, this package computes the intercept geometry
of every pursuer / virtual-target / evader triple, assembles the team
energy cost tensor, and solves the capped tripartite assignment problem to
proven optimality. A simulator certifies every planned capture and the CLI
adds density sweeps and SVG renderings.
"""

from .apollonius import (
    ApolloniusCircle,
    InterceptSolution,
    apollonius_circle,
    intercept,
    propagate_evader,
    time_to_vt,
    turn_angle,
)
from .assign import (
    Assignment,
    AssignmentProblem,
    SolveOutcome,
    check_feasible,
    solve,
    solve_bruteforce,
    solve_detailed,
)
from .cost import CandidateSet, CostTensor, build_cost_tensor, lattice, merge_candidates
from .errors import (
    DegenerateFoci,
    Infeasible,
    InfeasibleAssignment,
    InstanceTooLarge,
    InvalidGridSize,
    InvalidSpeed,
    NegativeTime,
    NumericalError,
    ParseError,
    PursuitError,
    SpeedRatioOutOfRange,
    ValidationError,
)
from .scenario import (
    Evader,
    Point2,
    Pursuer,
    Scenario,
    VTRegion,
    load_scenario,
    save_scenario,
    validate,
    wrap_angle,
)
from .sim import CaptureReport, Trajectory, simulate, verify_capture

__version__ = "0.1.0"

__all__ = [
    "ApolloniusCircle",
    "Assignment",
    "AssignmentProblem",
    "CandidateSet",
    "CaptureReport",
    "CostTensor",
    "DegenerateFoci",
    "Evader",
    "Infeasible",
    "InfeasibleAssignment",
    "InstanceTooLarge",
    "InterceptSolution",
    "InvalidGridSize",
    "InvalidSpeed",
    "NegativeTime",
    "NumericalError",
    "ParseError",
    "Point2",
    "Pursuer",
    "PursuitError",
    "Scenario",
    "SolveOutcome",
    "SpeedRatioOutOfRange",
    "Trajectory",
    "VTRegion",
    "ValidationError",
    "apollonius_circle",
    "build_cost_tensor",
    "check_feasible",
    "intercept",
    "lattice",
    "load_scenario",
    "merge_candidates",
    "propagate_evader",
    "save_scenario",
    "simulate",
    "solve",
    "solve_bruteforce",
    "solve_detailed",
    "time_to_vt",
    "turn_angle",
    "validate",
    "verify_capture",
    "wrap_angle",
]
