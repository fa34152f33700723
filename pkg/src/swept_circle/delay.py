"""Unsafe start-time intervals for constant-velocity agents via the delay conic.

Conventions used throughout this module:

* ``delta`` is the start stagger ``t2 - t1`` (positive when agent 2 starts
  later than agent 1).
* ``t`` is measured from agent 2's segment start.  Agent 1 has then been
  moving for ``t + delta`` seconds.

With ``Q = P1 - P2`` (the two *unprojected* start positions), the squared
edge distance is

    |Q + (V1 - V2) t + V1 delta|^2 - (r1 + r2)^2
        = A t^2 + B t delta + C delta^2 + D t + E delta + F

    A = |V1 - V2|^2         B = 2 (V1 - V2).V1      C = |V1|^2
    D = 2 (V1 - V2).Q       E = 2 V1.Q              F = |Q|^2 - (r1 + r2)^2

which is obtained by expanding the square; ``F`` and ``D`` reproduce the
plain collision quadratic when both agents start together (``delta = 0``).
The zero set is an ellipse unless the velocities are parallel or one agent
is stationary.

The unsafe stagger range for finite segments is the ``delta``-projection of
the ellipse interior intersected with the parallelogram on which both
agents are active::

    0 <= t <= d2,    0 <= t + delta <= d1

Because both sets are convex the projection is a single interval, whose
endpoints are either the ellipse's top/bottom points (when they lie inside
the parallelogram) or endpoints of the chords cut by the parallelogram's
four edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .errors import DegenerateConicError, WrongModelError
from .geometry import DEFAULT_TOL, Motion, TimeInterval, Tolerance, dot, sub
from .roots import negative_intervals


class Degenerate(str, Enum):
    PARALLEL = "parallel-motion"
    WAITING = "waiting-agent"


@dataclass(frozen=True)
class ConicCoefficients:
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    def __call__(self, t: float, delta: float) -> float:
        return (self.A * t * t + self.B * t * delta + self.C * delta * delta
                + self.D * t + self.E * delta + self.F)

    @property
    def det(self) -> float:
        """``4AC - B^2``; positive for a proper ellipse."""
        return 4.0 * self.A * self.C - self.B * self.B


def conic_coefficients(m1: Motion, m2: Motion) -> ConicCoefficients:
    if m1.has_accel or m2.has_accel:
        raise WrongModelError("the delay conic needs constant-velocity motions")
    q = sub(m1.p0, m2.p0)
    dv = sub(m1.v, m2.v)
    reach = m1.radius + m2.radius
    return ConicCoefficients(
        A=dot(dv, dv),
        B=2.0 * dot(dv, m1.v),
        C=dot(m1.v, m1.v),
        D=2.0 * dot(dv, q),
        E=2.0 * dot(m1.v, q),
        F=dot(q, q) - reach * reach,
    )


def degeneracy(cc: ConicCoefficients, tol: Tolerance = DEFAULT_TOL) -> Optional[Degenerate]:
    """Classify a degenerate conic, or return None for a proper ellipse."""
    if cc.det > tol.eps_root * 4.0 * cc.A * cc.C:
        return None
    speed1 = cc.C
    speed2 = max(0.0, cc.A - cc.B + cc.C)  # |V2|^2
    fastest = max(speed1, speed2)
    if fastest == 0.0 or min(speed1, speed2) <= tol.eps_root * fastest:
        return Degenerate.WAITING
    return Degenerate.PARALLEL


def ellipse_center(cc: ConicCoefficients) -> tuple[float, float]:
    """``(center_t, center_delta)``; only meaningful for a proper ellipse."""
    k = cc.det
    return (cc.B * cc.E - 2.0 * cc.C * cc.D) / k, (cc.B * cc.D - 2.0 * cc.A * cc.E) / k


def delay_range(cc: ConicCoefficients, tol: Tolerance = DEFAULT_TOL
                ) -> Union[tuple[float, float], Degenerate, None]:
    """Bottom and top ``delta`` of the ellipse.

    Returns a :class:`Degenerate` member for parallel motion or a waiting
    agent, and None when the ellipse has no interior (the agents never
    overlap for any stagger).
    """
    kind = degeneracy(cc, tol)
    if kind is not None:
        return kind
    k = cc.det
    inner = (2.0 * cc.B * cc.D - 4.0 * cc.A * cc.E) ** 2 + 4.0 * k * (cc.D ** 2 - 4.0 * cc.A * cc.F)
    if inner <= 0.0:
        return None
    _, center = ellipse_center(cc)
    half = math.sqrt(inner) / (2.0 * k)
    return center - half, center + half


def collision_times_at_extrema(cc: ConicCoefficients,
                               rng: tuple[float, float]) -> tuple[float, float]:
    """Time (from agent 2's start) of the double root at each end of ``rng``."""
    if cc.A <= 0.0:
        raise DegenerateConicError(Degenerate.PARALLEL, "A vanishes: equal velocities")
    return tuple((-cc.B * d - cc.D) / (2.0 * cc.A) for d in rng)


def delay_at_time(cc: ConicCoefficients, t: float, branch: str = "lower",
                  tol: Tolerance = DEFAULT_TOL) -> Optional[float]:
    """The ``delta`` where the vertical line at ``t`` meets the ellipse.

    ``branch="lower"`` takes the negative radical (the lower boundary),
    ``"upper"`` the positive one.  Returns None when ``t`` lies outside the
    ellipse's extent in ``t``.
    """
    if branch not in ("lower", "upper"):
        raise ValueError("branch must be 'lower' or 'upper'")
    if cc.C <= 0.0:
        raise DegenerateConicError(Degenerate.WAITING, "C vanishes: agent 1 is stationary")
    lin = cc.B * t + cc.E
    const = t * (cc.A * t + cc.D) + cc.F
    disc = lin * lin - 4.0 * cc.C * const
    if disc < 0.0:
        if disc < -tol.eps_root * max(lin * lin, abs(4.0 * cc.C * const)):
            return None
        disc = 0.0
    root = math.sqrt(disc)
    if branch == "lower":
        return (-lin - root) / (2.0 * cc.C)
    return (-lin + root) / (2.0 * cc.C)


def min_collision_time(cc: ConicCoefficients, tol: Tolerance = DEFAULT_TOL) -> Optional[float]:
    """Leftmost ``t`` on the ellipse; None when the ellipse is empty."""
    kind = degeneracy(cc, tol)
    if kind is not None:
        raise DegenerateConicError(kind)
    k = cc.det
    inner = (2.0 * cc.B * cc.E - 4.0 * cc.C * cc.D) ** 2 + 4.0 * k * (cc.E ** 2 - 4.0 * cc.C * cc.F)
    if inner <= 0.0:
        return None
    center_t, _ = ellipse_center(cc)
    return center_t - math.sqrt(inner) / (2.0 * k)


@dataclass(frozen=True)
class UnsafeDelayResult:
    """Outcome of the segmented unsafe-interval computation.

    ``unsafe_start_interval`` holds the start times of agent 1 (agent 2 kept
    fixed) that lead to a collision; ``agent2_start_interval`` is the same
    set seen from agent 2, i.e. the negated stagger range.
    """

    delay_range: Optional[tuple[float, float]]
    unsafe_start_interval: Optional[TimeInterval]
    degenerate_kind: Optional[Degenerate] = None
    stagger_range: Optional[tuple[float, float]] = None
    agent2_start_interval: Optional[TimeInterval] = None

    @property
    def collides(self) -> bool:
        return self.unsafe_start_interval is not None


def _edges(cc: ConicCoefficients, d1: float, d2: float):
    """Yield ``(coeffs, s_lo, s_hi, delta_of_s)`` for each active-window edge."""
    A, B, C, D, E, F = cc.A, cc.B, cc.C, cc.D, cc.E, cc.F
    # agent 2 just starting: t = 0, delta = s
    yield (C, E, F), 0.0, d1, lambda s: s
    # agent 1 just starting: t = s, delta = -s
    yield (A - B + C, D - E, F), 0.0, d2, lambda s: -s
    if math.isfinite(d2):
        # agent 2 finishing: t = d2, delta = s
        yield (C, B * d2 + E, A * d2 * d2 + D * d2 + F), -d2, d1 - d2, lambda s: s
    if math.isfinite(d1):
        # agent 1 finishing: t = s, delta = d1 - s
        yield ((A - B + C, B * d1 - 2.0 * C * d1 + D - E, C * d1 * d1 + E * d1 + F),
               0.0, d2, lambda s: d1 - s)


def _inside_window(t: float, delta: float, d1: float, d2: float) -> bool:
    return 0.0 <= t <= d2 and 0.0 <= t + delta <= d1


def stagger_projection(cc: ConicCoefficients, d1: float, d2: float,
                       tol: Tolerance = DEFAULT_TOL) -> Optional[tuple[float, float]]:
    """Range of staggers for which the two segments overlap somewhere.

    ``d1`` and ``d2`` are the segment durations (``math.inf`` allowed).
    """
    candidates = []
    rng = delay_range(cc, tol)
    if isinstance(rng, tuple):
        for delta, t in zip(rng, collision_times_at_extrema(cc, rng)):
            if _inside_window(t, delta, d1, d2):
                candidates.append(delta)
    for coeffs, s_lo, s_hi, delta_of in _edges(cc, d1, d2):
        if not s_hi > s_lo:
            continue
        for lo, hi in negative_intervals(coeffs, s_lo, s_hi, tol):
            candidates += [delta_of(lo), delta_of(hi)]
    if not candidates:
        return None
    lo, hi = min(candidates), max(candidates)
    return (lo, hi) if hi > lo else None


def unsafe_interval_segmented(m1: Motion, m2: Motion,
                              tol: Tolerance = DEFAULT_TOL) -> UnsafeDelayResult:
    """Unsafe start-time interval of agent 1 against agent 2's fixed segment.

    The current stagger is checked first: when the agents would not collide
    even on unbounded lines, the result reports no collision.  Otherwise the
    full unsafe set of staggers is projected out of the active-window
    parallelogram (see the module docstring), which also covers the
    parallel-motion and waiting-agent cases.
    """
    cc = conic_coefficients(m1, m2)
    rng = delay_range(cc, tol)
    kind = rng if isinstance(rng, Degenerate) else None
    ellipse = rng if isinstance(rng, tuple) else None
    delta0 = m2.t_start - m1.t_start
    if kind is None:
        gated = ellipse is not None and ellipse[0] < delta0 < ellipse[1]
    else:
        line = (cc.A, cc.B * delta0 + cc.D, cc(0.0, delta0))
        gated = bool(negative_intervals(line, -math.inf, math.inf, tol))
    if not gated:
        return UnsafeDelayResult(ellipse, None, kind)
    stagger = stagger_projection(cc, m1.duration, m2.duration, tol)
    if stagger is None:
        return UnsafeDelayResult(ellipse, None, kind)
    lo, hi = stagger
    return UnsafeDelayResult(
        delay_range=ellipse,
        unsafe_start_interval=TimeInterval(m2.t_start - hi, m2.t_start - lo),
        degenerate_kind=kind,
        stagger_range=stagger,
        agent2_start_interval=TimeInterval(m1.t_start + lo, m1.t_start + hi),
    )
