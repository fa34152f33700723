"""Planar velocity obstacles and the minimum-velocity-change avoidance procedure.

Velocities live in agent A's velocity space: the obstacle induced by agent
B is the cone of tangents from A to the disc of radius ``rA + rB`` around B,
translated so that its apex sits at B's velocity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .cv import cv_collision_interval
from .delay import unsafe_interval_segmented
from .errors import EmptyOverlapError, UnsupportedDimensionError, WrongModelError
from .geometry import (DEFAULT_TOL, Motion, Tolerance, Vec, add, cross2, dot, norm, scale,
                       sub)


def _rotate(v: Vec, angle: float) -> Vec:
    c, s = math.cos(angle), math.sin(angle)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def _require_2d(*vecs: Vec) -> None:
    for v in vecs:
        if len(v) != 2:
            raise UnsupportedDimensionError("velocity obstacles are only built in 2D")


@dataclass(frozen=True)
class VelocityObstacle:
    """Open cone ``apex + a*left_ray + b*right_ray`` (``a, b > 0``).

    ``total`` marks agents that already overlap: every velocity is unsafe
    and the rays are meaningless.
    """

    apex: Vec
    left_ray: Vec
    right_ray: Vec
    total: bool = False


def construct_vo(pos_a: Vec, pos_b: Vec, r_a: float, r_b: float, v_b: Vec) -> VelocityObstacle:
    """Velocity obstacle that agent B imposes on agent A.

    Raises:
        ValueError: If the two positions coincide.
        UnsupportedDimensionError: For non-planar input.
    """
    _require_2d(pos_a, pos_b, v_b)
    rel = sub(pos_b, pos_a)
    dist = norm(rel)
    if dist == 0.0:
        raise ValueError("agent positions coincide; the obstacle is undefined")
    apex = tuple(float(x) for x in v_b)
    reach = r_a + r_b
    if dist <= reach:
        return VelocityObstacle(apex, (0.0, 0.0), (0.0, 0.0), total=True)
    axis = scale(rel, 1.0 / dist)
    half = math.asin(reach / dist)
    return VelocityObstacle(apex, _rotate(axis, half), _rotate(axis, -half))


def _side_distances(vo: VelocityObstacle, v: Vec) -> tuple[float, float]:
    """Signed distances of ``v`` inside the right and left boundary lines."""
    w = sub(v, vo.apex)
    return cross2(vo.right_ray, w), cross2(w, vo.left_ray)


def vo_contains(vo: VelocityObstacle, v: Vec, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``v`` lies strictly inside the cone; the boundary counts as outside."""
    _require_2d(v)
    if vo.total:
        return True
    right, left = _side_distances(vo, v)
    return right > tol.eps_geom and left > tol.eps_geom


def distance_to_boundary(vo: VelocityObstacle, v: Vec) -> float:
    """Euclidean distance from ``v`` to the nearer of the two boundary rays."""
    w = sub(v, vo.apex)
    best = math.inf
    for ray in (vo.left_ray, vo.right_ray):
        along = max(0.0, dot(w, ray))
        best = min(best, norm(sub(w, scale(ray, along))))
    return best


def segment_ray_intersections(p0: Vec, v: Vec, vo: VelocityObstacle,
                              tol: Tolerance = DEFAULT_TOL) -> list[Vec]:
    """Where the velocity segment ``p0 -> p0 + v`` crosses the cone's boundary rays.

    Each crossing is pushed along the segment, away from the cone, until it
    is ``eps_clearance`` clear of the ray it crossed, so the returned
    velocities keep the segment's direction.  Returned in order along the
    segment.
    """
    _require_2d(p0, v)
    if vo.total:
        return []
    length = norm(v)
    if length == 0.0:
        return []
    u = scale(v, 1.0 / length)
    hits = []
    for ray, outward in ((vo.left_ray, (-vo.left_ray[1], vo.left_ray[0])),
                         (vo.right_ray, (vo.right_ray[1], -vo.right_ray[0]))):
        denom = cross2(u, ray)
        if abs(denom) <= 1e-12:
            continue
        rel = sub(vo.apex, p0)
        s = cross2(rel, ray) / denom          # distance along the segment
        along_ray = cross2(rel, u) / denom     # distance along the ray
        if not (0.0 <= s <= length and along_ray >= 0.0):
            continue
        exit_rate = dot(u, outward)
        s += math.copysign(tol.eps_clearance / abs(exit_rate), exit_rate)
        hits.append((s, add(p0, scale(u, s))))
    return [p for _, p in sorted(hits)]


class ActionKind(str, Enum):
    NO_COLLISION = "no-collision"
    NEW_VELOCITY_A = "new-velocity-A"
    NEW_VELOCITY_B = "new-velocity-B"
    WAIT = "wait-delay"
    NO_SOLUTION = "no-solution"


@dataclass(frozen=True)
class AvoidanceAction:
    kind: ActionKind
    velocity: Optional[Vec] = None
    delay: Optional[float] = None


def _collides(m1: Motion, m2: Motion, tol: Tolerance) -> bool:
    try:
        return cv_collision_interval(m1, m2, tol) is not None
    except EmptyOverlapError:
        return False


def with_velocity(m: Motion, v: Vec) -> Motion:
    """``m`` retimed to cover the same spatial segment at velocity ``v``."""
    ratio = norm(m.v) / norm(v)
    return replace(m, v=v, t_end=m.t_start + m.duration * ratio)


def velocity_candidates(mover: Motion, other: Motion, vmax: float,
                        tol: Tolerance = DEFAULT_TOL) -> list[Vec]:
    """Feasible rescaled velocities for ``mover`` on the obstacle boundary.

    The obstacle is built at the mover's start time, with the other agent's
    line extended backwards if it starts later; staying outside it is then
    sufficient for the segments too.  Ordered by the size of the change,
    ties going to the lower speed.
    """
    speed = norm(mover.v)
    if speed == 0.0 or vmax <= 0.0:
        return []
    t_ref = mover.t_start
    pos_other = add(other.p0, scale(other.v, t_ref - other.t_start))
    if pos_other == mover.p0:
        return []
    vo = construct_vo(mover.p0, pos_other, mover.radius, other.radius, other.v)
    if vo.total:
        return []
    reach = scale(mover.v, vmax / speed)
    out = []
    for cand in segment_ray_intersections((0.0, 0.0), reach, vo, tol):
        s = dot(cand, mover.v) / speed
        if 0.0 < s <= vmax and not vo_contains(vo, cand, tol):
            out.append(cand)
    return sorted(out, key=lambda c: (norm(sub(c, mover.v)), norm(c)))


def min_velocity_change(m1: Motion, m2: Motion, vmax_a: float, vmax_b: float,
                        tol: Tolerance = DEFAULT_TOL, allow_wait: bool = False) -> AvoidanceAction:
    """Cheapest action that resolves a collision between agents A (``m1``) and B (``m2``).

    Steps, in order: report no collision; rescale A's speed onto the boundary
    of B's obstacle; rescale B's speed likewise; delay A's start past its
    unsafe interval (only with ``allow_wait``); give up.  Speed changes keep
    each agent's direction and spatial segment.  Every returned change is
    re-checked with the exact detector before it is accepted.
    """
    _require_2d(m1.p0, m2.p0)
    if m1.has_accel or m2.has_accel:
        raise WrongModelError("velocity obstacles need constant-velocity motions")
    if not _collides(m1, m2, tol):
        return AvoidanceAction(ActionKind.NO_COLLISION)

    for cand in velocity_candidates(m1, m2, vmax_a, tol):
        if not _collides(with_velocity(m1, cand), m2, tol):
            return AvoidanceAction(ActionKind.NEW_VELOCITY_A, velocity=cand)
    for cand in velocity_candidates(m2, m1, vmax_b, tol):
        if not _collides(m1, with_velocity(m2, cand), tol):
            return AvoidanceAction(ActionKind.NEW_VELOCITY_B, velocity=cand)

    if allow_wait:
        res = unsafe_interval_segmented(m1, m2, tol)
        window = res.unsafe_start_interval
        if window is not None and math.isfinite(window.hi):
            delay = window.hi - m1.t_start + tol.eps_clearance
            if delay > 0.0 and not _collides(m1.shifted(delay), m2, tol):
                return AvoidanceAction(ActionKind.WAIT, delay=delay)
    return AvoidanceAction(ActionKind.NO_SOLUTION)
