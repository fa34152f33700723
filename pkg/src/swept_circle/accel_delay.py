"""Unsafe start-time interval under acceleration, found by bisection.

No closed form is used here: start offsets for agent 1 are tested with the
quartic collision predicate.  A colliding seed is located first (the
current start, or the first colliding point of a uniform grid), and the
interval around it is widened by bisecting each side between a colliding
and a safe offset.

Offsets are only meaningful while the two segments share some active time,
i.e. inside ``(t2 - t1', t2' - t1)``; outside that range agent 1 cannot
collide.  Grid seeding can miss unsafe slivers narrower than the grid
spacing; raise ``grid_points`` when that matters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .accel import accel_collision_intervals
from .errors import ConvergenceError, EmptyOverlapError
from .geometry import DEFAULT_TOL, Motion, TimeInterval, Tolerance


@dataclass(frozen=True)
class SearchConfig:
    accuracy: float = 1e-6
    max_iterations: int = 128
    grid_points: int = 64

    def __post_init__(self):
        if not self.accuracy > 0:
            raise ValueError("accuracy must be positive")
        if self.max_iterations < 1 or self.grid_points < 1:
            raise ValueError("max_iterations and grid_points must be at least 1")


def collides_at_offset(m1: Motion, m2: Motion, offset: float,
                       tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether starting agent 1 ``offset`` seconds later produces an overlap."""
    try:
        return bool(accel_collision_intervals(m1.shifted(offset), m2, tol))
    except EmptyOverlapError:
        return False


def bisect_boundary(pred: Callable[[float], bool], inside: float, outside: float,
                    accuracy: float, max_iterations: int) -> tuple[float, float, int]:
    """Shrink a ``(colliding, safe)`` bracket until it is ``accuracy`` wide.

    Returns the final ``(inside, outside, iterations)``.

    Raises:
        ConvergenceError: If ``max_iterations`` is reached first.
    """
    steps = 0
    while abs(outside - inside) > accuracy:
        if steps >= max_iterations:
            raise ConvergenceError("bisection did not converge", (inside, outside))
        mid = 0.5 * (inside + outside)
        if pred(mid):
            inside = mid
        else:
            outside = mid
        steps += 1
    return inside, outside, steps


def offset_range(m1: Motion, m2: Motion) -> tuple[float, float]:
    """Open range of agent-1 start offsets for which the segments overlap in time."""
    return m2.t_start - m1.t_end, m2.t_end - m1.t_start


def unsafe_interval_accel(m1: Motion, m2: Motion, cfg: SearchConfig = SearchConfig(),
                          tol: Tolerance = DEFAULT_TOL) -> Optional[TimeInterval]:
    """Contiguous interval of agent-1 start times that collide with agent 2.

    The returned endpoints are the safe ends of the final brackets, so the
    interval slightly over-approximates the unsafe set (by at most
    ``cfg.accuracy`` per side).  Among several disjoint unsafe intervals, the
    one containing the current start wins, then the nearest one starting
    later, then the nearest earlier one.
    """
    lo, hi = offset_range(m1, m2)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("the bisection search needs finite segments")

    def pred(o: float) -> bool:
        return collides_at_offset(m1, m2, o, tol)

    n = cfg.grid_points
    grid = [lo + (hi - lo) * (k + 0.5) / n for k in range(n)]
    if pred(0.0):
        seed = 0.0
    else:
        hits = [o for o in grid if pred(o)]
        if not hits:
            return None
        later = [o for o in hits if o >= 0.0]
        seed = min(later) if later else max(hits)

    # nearest safe probes around the seed; the range bounds are safe by construction
    left_in, left_out = seed, lo
    for o in reversed([g for g in grid if g < seed]):
        if pred(o):
            left_in = o
        else:
            left_out = o
            break
    right_in, right_out = seed, hi
    for o in [g for g in grid if g > seed]:
        if pred(o):
            right_in = o
        else:
            right_out = o
            break

    _, left, _ = bisect_boundary(pred, left_in, left_out, cfg.accuracy, cfg.max_iterations)
    _, right, _ = bisect_boundary(pred, right_in, right_out, cfg.accuracy, cfg.max_iterations)
    return TimeInterval(m1.t_start + left, m1.t_start + right)
