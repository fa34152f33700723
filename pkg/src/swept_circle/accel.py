"""Collision intervals for agents with initial velocity and constant acceleration."""
from __future__ import annotations

from dataclasses import dataclass

from .cv import overlap_window
from .geometry import DEFAULT_TOL, Motion, TimeInterval, Tolerance, dot, position_at, sub, velocity_at
from .roots import negative_intervals, polyval


@dataclass(frozen=True)
class QuarticCoefficients:
    """``sqEdgeDist(t) = a*t**4 + b*t**3 + c*t**2 + d*t + e`` from the overlap start."""

    a: float
    b: float
    c: float
    d: float
    e: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.e)

    def __call__(self, t: float) -> float:
        return polyval(self.as_tuple(), t)


def accel_coefficients(m1: Motion, m2: Motion) -> QuarticCoefficients:
    """Quartic squared edge distance; missing accelerations count as zero.

    Both the position and the velocity of the earlier agent are projected to
    the later agent's start time.
    """
    t0, _ = overlap_window(m1, m2)
    dp = sub(position_at(m1, t0), position_at(m2, t0))
    dv = sub(velocity_at(m1, t0), velocity_at(m2, t0))
    da = sub(m1.accel_or_zero(), m2.accel_or_zero())
    reach = m1.radius + m2.radius
    return QuarticCoefficients(
        dot(da, da) / 4.0,
        dot(da, dv),
        dot(da, dp) + dot(dv, dv),
        2.0 * dot(dv, dp),
        dot(dp, dp) - reach * reach,
    )


def accel_collision_intervals(m1: Motion, m2: Motion,
                              tol: Tolerance = DEFAULT_TOL) -> list[TimeInterval]:
    """Zero, one or two open overlap intervals in absolute time.

    Real roots pair up as (1, 2) and (3, 4) when the quartic is well
    conditioned; each candidate piece is still confirmed by evaluating the
    quartic inside it, so merged or spurious roots cannot flip the pairing.
    """
    q = accel_coefficients(m1, m2)
    t0, tmax = overlap_window(m1, m2)
    return [TimeInterval(t0 + lo, t0 + hi)
            for lo, hi in negative_intervals(q.as_tuple(), 0.0, tmax - t0, tol)]
