"""Intercept geometry for one pursuer / virtual-target / evader triple.

A pursuer first runs straight to a virtual target (phase 1), then runs
straight at the point where it will meet the evader (phase 2). Because both
agents move at constant speed on straight lines during phase 2, the locus
of feasible meeting points is an Apollonius circle whose foci are the
virtual target and the evader's position at the phase switch. All
operations here are pure functions on immutable inputs.

Angle conventions: headings are global-frame radians in (-pi, pi].
``sigma_e`` and ``sigma_p`` are the evader's and pursuer's phase-2 course
angles measured from the line of sight that runs from the virtual target to
the evader. ``theta`` is the interior angle at the virtual target between
the inbound leg and the outbound leg: pi means the pursuer flies straight
through, 0 means a full reversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateFoci,
    InvalidSpeed,
    NegativeTime,
    NumericalError,
    SpeedRatioOutOfRange,
)
from .scenario import Evader, Point2, Pursuer, wrap_angle

#: Absolute tolerance for geometric identity checks on coordinates of order 10 DU.
GEOMETRY_TOL = 1e-9

#: How far an inverse-trig argument may drift past [-1, 1] before it is an error.
CLAMP_TOL = 1e-9


def _clamp_unit(value: float) -> float:
    """Clamp an asin/acos argument to [-1, 1], rejecting real drift."""
    if value > 1.0:
        if value - 1.0 > CLAMP_TOL:
            raise NumericalError(f"trig argument {value} exceeds 1 beyond tolerance")
        return 1.0
    if value < -1.0:
        if -1.0 - value > CLAMP_TOL:
            raise NumericalError(f"trig argument {value} below -1 beyond tolerance")
        return -1.0
    return value


@dataclass(frozen=True)
class ApolloniusCircle:
    """Locus of points X with ``|X - vt| / |X - evader_at_t1| = 1/mu``.

    ``mu`` is the evader/pursuer speed ratio, strictly inside (0, 1), so the
    circle always encloses the evader focus. The origin lies on the ray from
    the virtual target through the evader, beyond the evader.
    """

    origin: Point2
    radius: float
    mu: float
    vt: Point2
    evader_at_t1: Point2

    def point_at(self, angle: float) -> Point2:
        """Point on the circle at the given polar angle about the origin."""
        return Point2(
            self.origin.x + self.radius * math.cos(angle),
            self.origin.y + self.radius * math.sin(angle),
        )


@dataclass(frozen=True)
class InterceptSolution:
    """Full geometry of one pursuer -> virtual target -> evader engagement.

    ``t1`` is the phase-switch time, ``t_f`` the interception time.
    ``los_angle`` is the bearing from the virtual target to the evader at
    ``t1``. ``heading_phase1`` / ``heading_phase2`` are the pursuer's
    constant headings on [0, t1] and [t1, t_f].
    """

    t1: float
    t_f: float
    evader_at_t1: Point2
    los_angle: float
    sigma_e: float
    sigma_p: float
    heading_phase1: float
    heading_phase2: float
    intercept: Point2
    dist_vt_to_intercept: float
    theta: float
    circle: ApolloniusCircle


def time_to_vt(pursuer_pos: Point2, vt: Point2, v_p: float) -> float:
    """Transit time of a pursuer running straight at the virtual target."""
    if v_p <= 0:
        raise InvalidSpeed(f"pursuer speed must be > 0 (got {v_p})")
    return pursuer_pos.distance_to(vt) / v_p


def propagate_evader(evader: Evader, t: float) -> Point2:
    """Evader position after coasting for time t on its fixed course."""
    if t < 0:
        raise NegativeTime(f"propagation time must be >= 0 (got {t})")
    return Point2(
        evader.position.x + t * evader.speed * math.cos(evader.heading),
        evader.position.y + t * evader.speed * math.sin(evader.heading),
    )


def apollonius_circle(vt: Point2, evader_at_t1: Point2, mu: float) -> ApolloniusCircle:
    """Apollonius circle with foci at the virtual target and the evader.

    The circle origin sits beyond the evader on the line of sight at offset
    ``mu^2 * d / (1 - mu^2)`` from the evader, with radius
    ``mu * d / (1 - mu^2)`` where ``d`` is the focal separation.
    """
    if not 0.0 < mu < 1.0:
        raise SpeedRatioOutOfRange(f"speed ratio must be in (0, 1) (got {mu})")
    d = vt.distance_to(evader_at_t1)
    if d == 0.0:
        raise DegenerateFoci("virtual target and propagated evader coincide")
    los = math.atan2(evader_at_t1.y - vt.y, evader_at_t1.x - vt.x)
    offset = mu * mu * d / (1.0 - mu * mu)
    origin = Point2(
        evader_at_t1.x + offset * math.cos(los),
        evader_at_t1.y + offset * math.sin(los),
    )
    radius = mu * d / (1.0 - mu * mu)
    return ApolloniusCircle(origin=origin, radius=radius, mu=mu, vt=vt, evader_at_t1=evader_at_t1)


def turn_angle(pursuer_pos: Point2, vt: Point2, intercept_pt: Point2) -> float:
    """Interior angle at the virtual target between inbound and outbound legs.

    Returns a value in [0, pi]: pi for a straight-through pass (no
    maneuver), 0 for a full reversal. A zero-length leg carries no
    direction, so there is no maneuver to penalize and the angle is pi by
    convention.
    """
    ux, uy = pursuer_pos.x - vt.x, pursuer_pos.y - vt.y
    vx, vy = intercept_pt.x - vt.x, intercept_pt.y - vt.y
    nu = math.hypot(ux, uy)
    nv = math.hypot(vx, vy)
    if nu == 0.0 or nv == 0.0:
        return math.pi
    return math.acos(_clamp_unit((ux * vx + uy * vy) / (nu * nv)))


def degenerate_intercept(pursuer: Pursuer, vt: Point2, evader: Evader) -> InterceptSolution:
    """Solution for a triple whose evader sits exactly on the virtual target
    when the pursuer arrives: capture happens at the switch point with a
    zero-length second phase and no maneuver to penalize (theta = pi).
    """
    if pursuer.speed <= 0:
        raise InvalidSpeed(f"pursuer speed must be > 0 (got {pursuer.speed})")
    mu = evader.speed / pursuer.speed
    t1 = time_to_vt(pursuer.position, vt, pursuer.speed)
    evader_at_t1 = propagate_evader(evader, t1)
    heading1 = math.atan2(vt.y - pursuer.position.y, vt.x - pursuer.position.x)
    circle = ApolloniusCircle(origin=vt, radius=0.0, mu=mu, vt=vt, evader_at_t1=evader_at_t1)
    return InterceptSolution(
        t1=t1,
        t_f=t1,
        evader_at_t1=evader_at_t1,
        los_angle=0.0,
        sigma_e=0.0,
        sigma_p=0.0,
        heading_phase1=heading1,
        heading_phase2=heading1,
        intercept=vt,
        dist_vt_to_intercept=0.0,
        theta=math.pi,
        circle=circle,
    )


def intercept(pursuer: Pursuer, vt: Point2, evader: Evader) -> InterceptSolution:
    """Solve the full two-phase engagement for one triple.

    Composes the phase-1 transit, the evader propagation to the switch
    time, the Apollonius circle, and the unique interception point on the
    evader's forward course. Raises SpeedRatioOutOfRange unless the evader
    is strictly slower than the pursuer, and DegenerateFoci when the evader
    sits exactly on the virtual target at the switch time (the caller
    decides how to cost that case).
    """
    if pursuer.speed <= 0:
        raise InvalidSpeed(f"pursuer speed must be > 0 (got {pursuer.speed})")
    mu = evader.speed / pursuer.speed
    if not 0.0 < mu < 1.0:
        raise SpeedRatioOutOfRange(f"speed ratio must be in (0, 1) (got {mu})")

    t1 = time_to_vt(pursuer.position, vt, pursuer.speed)
    evader_at_t1 = propagate_evader(evader, t1)
    circle = apollonius_circle(vt, evader_at_t1, mu)

    los = math.atan2(evader_at_t1.y - vt.y, evader_at_t1.x - vt.x)
    sigma_e = wrap_angle(evader.heading - los)
    sigma_p = math.asin(_clamp_unit(mu * math.sin(sigma_e)))
    heading_phase2 = wrap_angle(sigma_p + los)

    d = vt.distance_to(evader_at_t1)
    sin_e = math.sin(sigma_e)
    dist = (
        d
        / (1.0 - mu * mu)
        * (mu * math.cos(sigma_e) + math.sqrt(1.0 - mu * mu * sin_e * sin_e))
    )
    intercept_pt = Point2(
        vt.x + dist * math.cos(heading_phase2),
        vt.y + dist * math.sin(heading_phase2),
    )
    t_f = t1 + dist / pursuer.speed

    heading_phase1 = math.atan2(vt.y - pursuer.position.y, vt.x - pursuer.position.x)
    theta = turn_angle(pursuer.position, vt, intercept_pt)

    return InterceptSolution(
        t1=t1,
        t_f=t_f,
        evader_at_t1=evader_at_t1,
        los_angle=los,
        sigma_e=sigma_e,
        sigma_p=sigma_p,
        heading_phase1=heading_phase1,
        heading_phase2=heading_phase2,
        intercept=intercept_pt,
        dist_vt_to_intercept=dist,
        theta=theta,
        circle=circle,
    )
