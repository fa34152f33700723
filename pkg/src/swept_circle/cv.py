"""Constant-velocity collision intervals between two circular agents."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import EmptyOverlapError, WrongModelError
from .geometry import DEFAULT_TOL, Motion, TimeInterval, Tolerance, dot, position_at, sub
from .roots import negative_intervals


@dataclass(frozen=True)
class QuadCoefficients:
    """``sqEdgeDist(t) = a*t**2 + b*t + c`` with ``t`` measured from the overlap start."""

    a: float
    b: float
    c: float

    def __call__(self, t: float) -> float:
        return (self.a * t + self.b) * t + self.c


def overlap_window(m1: Motion, m2: Motion) -> tuple[float, float]:
    """The common active window ``(t0, tmax)`` of two segments.

    Raises:
        EmptyOverlapError: If the segments are never active together.
    """
    t0 = max(m1.t_start, m2.t_start)
    tmax = min(m1.t_end, m2.t_end)
    if not t0 < tmax:
        raise EmptyOverlapError(f"segments never overlap in time (t0={t0}, tmax={tmax})")
    if m1.dim != m2.dim:
        raise ValueError("motions have different dimensions")
    return t0, tmax


def cv_coefficients(m1: Motion, m2: Motion) -> QuadCoefficients:
    """Squared edge distance as a quadratic in time since the later start.

    The earlier agent is projected forward to the later agent's start time
    before the relative position is formed.
    """
    if m1.has_accel or m2.has_accel:
        raise WrongModelError("constant-velocity model given a motion with acceleration")
    t0, _ = overlap_window(m1, m2)
    dp = sub(position_at(m1, t0), position_at(m2, t0))
    dv = sub(m1.v, m2.v)
    reach = m1.radius + m2.radius
    return QuadCoefficients(dot(dv, dv), 2.0 * dot(dv, dp), dot(dp, dp) - reach * reach)


def cv_collision_interval(m1: Motion, m2: Motion,
                          tol: Tolerance = DEFAULT_TOL) -> Optional[TimeInterval]:
    """Open interval of absolute time during which the two agents overlap.

    Returns None when the agents only touch (a double root) or never come
    into contact inside the common active window.  Agents already
    overlapping at the window start yield an interval starting there.
    """
    q = cv_coefficients(m1, m2)
    t0, tmax = overlap_window(m1, m2)
    found = negative_intervals((q.a, q.b, q.c), 0.0, tmax - t0, tol)
    if not found:
        return None
    lo, hi = found[0]
    return TimeInterval(t0 + lo, t0 + hi)
