"""Problem-instance data model: agents, virtual-target region, file I/O, validation.

Units are abstract distance units (DU) and time units (TU) throughout.
Scenario values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ParseError, ValidationError

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Normalize an angle in radians to the half-open interval (-pi, pi]."""
    r = math.fmod(angle, TWO_PI)
    if r > math.pi:
        r -= TWO_PI
    elif r <= -math.pi:
        r += TWO_PI
    return r


@dataclass(frozen=True)
class Point2:
    """A point in the plane (DU)."""

    x: float
    y: float

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Pursuer:
    """A pursuer: initial position and constant speed (DU/TU)."""

    id: int
    position: Point2
    speed: float


@dataclass(frozen=True)
class Evader:
    """An evader: initial position, constant speed and fixed course.

    ``heading`` is measured in the global frame, radians in (-pi, pi].
    """

    id: int
    position: Point2
    speed: float
    heading: float


@dataclass(frozen=True)
class VTRegion:
    """Axis-aligned rectangle from which virtual targets may be chosen."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def center(self) -> Point2:
        return Point2(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))

    def contains(self, p: Point2) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max


@dataclass(frozen=True)
class Scenario:
    """One problem instance.

    The engagement starts at t = 0. ``max_virtual_targets`` caps how many
    distinct virtual targets the team may activate; ``turn_weight`` scales
    the maneuver term of the cost. ``allow_mv_ge_n`` relaxes the
    fewer-virtual-targets-than-pursuers assumption.
    """

    pursuers: tuple[Pursuer, ...]
    evaders: tuple[Evader, ...]
    region: VTRegion
    max_virtual_targets: int
    turn_weight: float = 1.0
    allow_mv_ge_n: bool = False

    @property
    def n_pursuers(self) -> int:
        return len(self.pursuers)

    @property
    def n_evaders(self) -> int:
        return len(self.evaders)


def _finite(value: float) -> bool:
    return isinstance(value, (int, float)) and math.isfinite(value)


def validate(scenario: Scenario) -> list[str]:
    """Return descriptions of every violated scenario invariant.

    Pure function: the scenario is not modified. An empty list means the
    scenario satisfies all standing assumptions of the engagement model.
    """
    problems: list[str] = []

    for idx, p in enumerate(scenario.pursuers):
        path = f"pursuers[{idx}]"
        if not (_finite(p.position.x) and _finite(p.position.y)):
            problems.append(f"{path}.position: components must be finite")
        if not _finite(p.speed) or p.speed <= 0:
            problems.append(f"{path}.speed: must be > 0 (got {p.speed})")

    for idx, e in enumerate(scenario.evaders):
        path = f"evaders[{idx}]"
        if not (_finite(e.position.x) and _finite(e.position.y)):
            problems.append(f"{path}.position: components must be finite")
        if not _finite(e.speed) or e.speed <= 0:
            problems.append(f"{path}.speed: must be > 0 (got {e.speed})")
        if not _finite(e.heading):
            problems.append(f"{path}.heading: must be finite")
        elif not (-math.pi < e.heading <= math.pi):
            problems.append(f"{path}.heading: must be normalized to (-pi, pi]")

    ids = [p.id for p in scenario.pursuers]
    if len(set(ids)) != len(ids):
        problems.append("pursuers: ids must be unique")
    ids = [e.id for e in scenario.evaders]
    if len(set(ids)) != len(ids):
        problems.append("evaders: ids must be unique")

    r = scenario.region
    if not all(_finite(v) for v in (r.x_min, r.x_max, r.y_min, r.y_max)):
        problems.append("vt_region: bounds must be finite")
    else:
        if not r.x_min < r.x_max:
            problems.append(f"vt_region: x_min < x_max violated ({r.x_min} >= {r.x_max})")
        if not r.y_min < r.y_max:
            problems.append(f"vt_region: y_min < y_max violated ({r.y_min} >= {r.y_max})")

    n, m = scenario.n_pursuers, scenario.n_evaders
    if n < 1:
        problems.append("pursuers: at least one pursuer required")
    if m < 1:
        problems.append("evaders: at least one evader required")
    if n < m:
        problems.append(f"N >= M violated (N={n} pursuers, M={m} evaders)")

    speeds_valid = all(
        _finite(p.speed) and p.speed > 0 for p in scenario.pursuers
    ) and all(_finite(e.speed) and e.speed > 0 for e in scenario.evaders)
    if scenario.pursuers and scenario.evaders and speeds_valid:
        slowest_p = min(p.speed for p in scenario.pursuers)
        fastest_e = max(e.speed for e in scenario.evaders)
        if not slowest_p > fastest_e:
            problems.append(
                "speed ratio >= 1: slowest pursuer speed "
                f"{slowest_p} must exceed fastest evader speed {fastest_e}"
            )

    mv = scenario.max_virtual_targets
    if not isinstance(mv, int) or mv < 1:
        problems.append(f"max_virtual_targets: must be an integer >= 1 (got {mv})")
    elif n >= 1 and mv >= n and not scenario.allow_mv_ge_n:
        problems.append(
            f"max_virtual_targets: M_V < N violated (M_V={mv}, N={n}); "
            "set allow_mv_ge_n to override"
        )

    if not _finite(scenario.turn_weight) or scenario.turn_weight < 0:
        problems.append(f"turn_weight: must be >= 0 (got {scenario.turn_weight})")

    return problems


_PURSUER_KEYS = {"id", "x", "y", "speed"}
_EVADER_KEYS = {"id", "x", "y", "speed", "heading"}
_REGION_KEYS = {"x_min", "x_max", "y_min", "y_max"}
_TOP_KEYS = {
    "pursuers",
    "evaders",
    "vt_region",
    "max_virtual_targets",
    "turn_weight",
    "allow_mv_ge_n",
}
_TOP_REQUIRED = {"pursuers", "evaders", "vt_region", "max_virtual_targets"}


def _require_keys(obj: dict, required: set, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"{where}: missing keys {sorted(missing)}")
    unknown = obj.keys() - allowed
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")


def _number(obj: dict, key: str, where: str) -> float:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}.{key}: expected a number, got {type(v).__name__}")
    return float(v)


def _integer(obj: dict, key: str, where: str) -> int:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}.{key}: expected an integer, got {type(v).__name__}")
    return v


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a Scenario from a parsed file document.

    Raises ParseError on structural problems, ValidationError if the
    resulting scenario violates any modeling assumption. Evader headings
    are normalized to (-pi, pi].
    """
    _require_keys(doc, _TOP_REQUIRED, _TOP_KEYS, "scenario")

    raw_pursuers = doc["pursuers"]
    raw_evaders = doc["evaders"]
    if not isinstance(raw_pursuers, list):
        raise ParseError("pursuers: expected an array")
    if not isinstance(raw_evaders, list):
        raise ParseError("evaders: expected an array")

    pursuers = []
    for idx, obj in enumerate(raw_pursuers):
        where = f"pursuers[{idx}]"
        _require_keys(obj, _PURSUER_KEYS, _PURSUER_KEYS, where)
        pursuers.append(
            Pursuer(
                id=_integer(obj, "id", where),
                position=Point2(_number(obj, "x", where), _number(obj, "y", where)),
                speed=_number(obj, "speed", where),
            )
        )

    evaders = []
    for idx, obj in enumerate(raw_evaders):
        where = f"evaders[{idx}]"
        _require_keys(obj, _EVADER_KEYS, _EVADER_KEYS, where)
        heading = _number(obj, "heading", where)
        if math.isfinite(heading):
            heading = wrap_angle(heading)
        evaders.append(
            Evader(
                id=_integer(obj, "id", where),
                position=Point2(_number(obj, "x", where), _number(obj, "y", where)),
                speed=_number(obj, "speed", where),
                heading=heading,
            )
        )

    _require_keys(doc["vt_region"], _REGION_KEYS, _REGION_KEYS, "vt_region")
    region = VTRegion(
        x_min=_number(doc["vt_region"], "x_min", "vt_region"),
        x_max=_number(doc["vt_region"], "x_max", "vt_region"),
        y_min=_number(doc["vt_region"], "y_min", "vt_region"),
        y_max=_number(doc["vt_region"], "y_max", "vt_region"),
    )

    turn_weight = 1.0
    if "turn_weight" in doc:
        turn_weight = _number(doc, "turn_weight", "scenario")
    allow = False
    if "allow_mv_ge_n" in doc:
        allow = doc["allow_mv_ge_n"]
        if not isinstance(allow, bool):
            raise ParseError("scenario.allow_mv_ge_n: expected a boolean")

    scenario = Scenario(
        pursuers=tuple(pursuers),
        evaders=tuple(evaders),
        region=region,
        max_virtual_targets=_integer(doc, "max_virtual_targets", "scenario"),
        turn_weight=turn_weight,
        allow_mv_ge_n=allow,
    )

    problems = validate(scenario)
    if problems:
        raise ValidationError(problems)
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario file (JSON)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(doc)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Serialize a Scenario to the file document layout."""
    return {
        "pursuers": [
            {"id": p.id, "x": p.position.x, "y": p.position.y, "speed": p.speed}
            for p in scenario.pursuers
        ],
        "evaders": [
            {
                "id": e.id,
                "x": e.position.x,
                "y": e.position.y,
                "speed": e.speed,
                "heading": e.heading,
            }
            for e in scenario.evaders
        ],
        "vt_region": {
            "x_min": scenario.region.x_min,
            "x_max": scenario.region.x_max,
            "y_min": scenario.region.y_min,
            "y_max": scenario.region.y_max,
        },
        "max_virtual_targets": scenario.max_virtual_targets,
        "turn_weight": scenario.turn_weight,
        "allow_mv_ge_n": scenario.allow_mv_ge_n,
    }


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    """Write a scenario file that round-trips through load_scenario."""
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n")


def with_max_virtual_targets(scenario: Scenario, mv: int) -> Scenario:
    """Return a copy of the scenario with a different virtual-target cap."""
    updated = replace(scenario, max_virtual_targets=mv)
    problems = validate(updated)
    if problems:
        raise ValidationError(problems)
    return updated
