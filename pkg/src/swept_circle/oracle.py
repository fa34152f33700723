"""Sampling-based collision detection used as independent ground truth.

Positions are evaluated on a uniform time grid straight from the kinematic
equations; every sign change of the squared edge distance is then refined
by bisection.  Overlaps shorter than the grid step can slip between two
samples, so callers pick ``dt`` well below the narrowest interval they care
about.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cv import overlap_window
from .geometry import Motion, TimeInterval

REFINE_TO = 1e-9


@dataclass(frozen=True)
class SamplingReport:
    min_sq_edge_dist: float
    argmin_time: float
    crossing_intervals: tuple[TimeInterval, ...]
    samples_used: int


def _positions(m: Motion, ts: np.ndarray) -> np.ndarray:
    dt = (ts - m.t_start)[:, None]
    out = np.asarray(m.p0) + dt * np.asarray(m.v)
    if m.accel is not None:
        out = out + 0.5 * dt * dt * np.asarray(m.accel)
    return out


def sq_edge_dist(m1: Motion, m2: Motion, ts) -> np.ndarray:
    """Squared centre distance minus squared radius sum, evaluated directly."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    d = _positions(m1, ts) - _positions(m2, ts)
    reach = m1.radius + m2.radius
    return np.einsum("ij,ij->i", d, d) - reach * reach


def _refine(f, lo: float, hi: float) -> float:
    """Bisect a sign change of ``f`` on ``[lo, hi]``; ``f(lo) >= 0 > f(hi)`` or the reverse."""
    lo_neg = f(lo) < 0.0
    while hi - lo > REFINE_TO:
        mid = 0.5 * (lo + hi)
        if (f(mid) < 0.0) == lo_neg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_pair(m1: Motion, m2: Motion, dt: float = 1e-4) -> SamplingReport:
    """Sample the squared edge distance over the common active window.

    Raises:
        EmptyOverlapError: If the segments are never active together.
        ValueError: If ``dt`` is not positive or the window is unbounded.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    t0, tmax = overlap_window(m1, m2)
    if not math.isfinite(tmax):
        raise ValueError("sampling needs a bounded time window")
    n = max(1, math.ceil((tmax - t0) / dt))
    ts = t0 + dt * np.arange(n + 1)
    ts[-1] = tmax
    ts = ts[ts <= tmax]
    vals = sq_edge_dist(m1, m2, ts)

    def f(t):
        return float(sq_edge_dist(m1, m2, t)[0])

    neg = vals < 0.0
    intervals = []
    i, count = 0, len(ts)
    while i < count:
        if not neg[i]:
            i += 1
            continue
        j = i
        while j + 1 < count and neg[j + 1]:
            j += 1
        lo = ts[0] if i == 0 else _refine(f, ts[i - 1], ts[i])
        hi = ts[-1] if j == count - 1 else _refine(f, ts[j], ts[j + 1])
        intervals.append(TimeInterval(float(lo), float(hi)))
        i = j + 1
    k = int(np.argmin(vals))
    return SamplingReport(float(vals[k]), float(ts[k]), tuple(intervals), count)
