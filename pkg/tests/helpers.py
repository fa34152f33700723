"""Random scenario generators and oracle comparisons shared by the test modules."""
from __future__ import annotations

import math

import numpy as np

from swept_circle.errors import EmptyOverlapError
from swept_circle.geometry import Motion, Path
from swept_circle.oracle import sample_pair
from swept_circle.scenario import Scenario

ACCEPTANCE_LINES: list[str] = []


def record(label, ok, detail):
    """Print and keep one PASS/FAIL line for the end-of-run summary."""
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def in_disc(rng, radius, dim=2):
    while True:
        p = rng.uniform(-radius, radius, dim)
        if p @ p <= radius * radius:
            return tuple(float(x) for x in p)


def random_cv_pair(rng, aimed=None):
    """Pair per the criterion-1 envelope; ``aimed`` pairs are steered at a meeting point."""
    if aimed is None:
        aimed = rng.random() < 0.6
    while True:
        r1, r2 = rng.uniform(0.2, 1.5, 2)
        t1, t2 = 0.0, float(rng.uniform(-3.0, 3.0))
        d1, d2 = rng.uniform(5.0, 15.0, 2)
        v1, v2 = in_disc(rng, 2.0), in_disc(rng, 2.0)
        if aimed:
            t0, tmax = max(t1, t2), min(t1 + d1, t2 + d2)
            if tmax <= t0:
                continue
            meet_t = rng.uniform(t0, tmax)
            meet = np.array(in_disc(rng, 5.0)) + rng.normal(0, 0.5 * (r1 + r2), 2)
            p1 = meet - np.array(v1) * (meet_t - t1)
            p2 = meet - np.array(v2) * (meet_t - t2)
            if p1 @ p1 > 100 or p2 @ p2 > 100:
                continue
            p1, p2 = tuple(map(float, p1)), tuple(map(float, p2))
        else:
            p1, p2 = in_disc(rng, 10.0), in_disc(rng, 10.0)
        return (Motion(p1, v1, t1, t1 + d1, r1), Motion(p2, v2, t2, t2 + d2, r2))


def random_accel_pair(rng, aimed=None):
    """Like :func:`random_cv_pair` with accelerations of at most 1 m/s^2."""
    m1, m2 = random_cv_pair(rng, aimed)
    a1, a2 = in_disc(rng, 1.0), in_disc(rng, 1.0)
    if aimed if aimed is not None else rng.random() < 0.6:
        # keep the meeting roughly intact by re-centring on a shared mid time
        t0, tmax = max(m1.t_start, m2.t_start), min(m1.t_end, m2.t_end)
        tm = rng.uniform(t0, tmax)
        p1 = np.array(m1.p0) - 0.5 * np.array(a1) * (tm - m1.t_start) ** 2
        p2 = np.array(m2.p0) - 0.5 * np.array(a2) * (tm - m2.t_start) ** 2
        return (Motion(tuple(map(float, p1)), m1.v, m1.t_start, m1.t_end, m1.radius, a1),
                Motion(tuple(map(float, p2)), m2.v, m2.t_start, m2.t_end, m2.radius, a2))
    return (Motion(m1.p0, m1.v, m1.t_start, m1.t_end, m1.radius, a1),
            Motion(m2.p0, m2.v, m2.t_start, m2.t_end, m2.radius, a2))


def double_overlap_pair(rng):
    """Agents whose relative path is a parabola crossing the contact disc twice.

    In a rotated frame the relative position is ``(x0 + vx t, y0 + vy t - g t^2 / 2)``:
    it climbs through the disc, peaks outside it and falls back through it.
    """
    while True:
        reach = rng.uniform(0.4, 1.5)
        r1 = rng.uniform(0.2, reach - 0.2) if reach > 0.4 else 0.2
        r2 = reach - r1
        g = rng.uniform(0.6, 1.8)
        peak = reach + rng.uniform(0.3, 1.5)
        y0 = -reach - rng.uniform(0.5, 3.0)
        vy = math.sqrt(2 * g * (peak - y0))
        x0, vx = rng.uniform(-0.3, 0.3) * reach, rng.uniform(-0.05, 0.05)
        t_land = 2 * vy / g
        theta = rng.uniform(0, 2 * math.pi)
        rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
        P = rot @ [x0, y0]
        V = rot @ [vx, vy]
        A = rot @ [0.0, -g]
        common_v = np.array(in_disc(rng, 0.5))
        base = np.array(in_disc(rng, 3.0))
        t1, t2 = 0.0, float(rng.uniform(-1.0, 0.0))
        # relative state is defined at t = 0; project each agent back to its start
        a1, a2 = A / 2, -A / 2
        v1_0, v2_0 = common_v + V / 2, common_v - V / 2
        p1_0, p2_0 = base + P / 2, base - P / 2
        v2 = v2_0 - a2 * (0 - t2)
        p2 = p2_0 - v2 * (0 - t2) - 0.5 * a2 * (0 - t2) ** 2
        if np.linalg.norm(v1_0) > 2 or np.linalg.norm(v2) > 2:
            continue
        d = max(5.0, t_land + rng.uniform(0.5, 2.0))
        if d > 15.0:
            continue
        m1 = Motion(tuple(map(float, p1_0)), tuple(map(float, v1_0)), t1, t1 + d, r1,
                    tuple(map(float, a1)))
        m2 = Motion(tuple(map(float, p2)), tuple(map(float, v2)), t2, t2 + d + 0.5, r2,
                    tuple(map(float, a2)))
        report = sample_pair(m1, m2, 1e-3)
        if len([iv for iv in report.crossing_intervals if iv.width > 0.05]) == 2:
            return m1, m2


def crossing_pair(rng, min_angle=0.3):
    """Non-degenerate pair currently colliding inside its segments."""
    from swept_circle.cv import cv_collision_interval
    while True:
        m1, m2 = random_cv_pair(rng, aimed=True)
        n1, n2 = np.linalg.norm(m1.v), np.linalg.norm(m2.v)
        if min(n1, n2) < 0.2:
            continue
        sin = abs(m1.v[0] * m2.v[1] - m1.v[1] * m2.v[0]) / (n1 * n2)
        if sin < math.sin(min_angle):
            continue
        iv = cv_collision_interval(m1, m2)
        if iv is not None and iv.width > 0.05:
            return m1, m2


def oracle_collides(m1, m2, dt=1e-4, depth=0.0):
    """Sampling verdict: does the squared edge distance drop below ``-depth``?"""
    try:
        report = sample_pair(m1, m2, dt)
    except EmptyOverlapError:
        return False
    return report.min_sq_edge_dist < -depth or any(iv.width > 0 for iv in report.crossing_intervals)


def unmatched(wide, other, tol, min_width):
    """Intervals in ``wide`` (wider than ``min_width``) without an ``other`` within ``tol``."""
    misses = []
    for iv in wide:
        if iv.width <= min_width:
            continue
        if not any(abs(iv.lo - o.lo) <= tol and abs(iv.hi - o.hi) <= tol for o in other):
            misses.append(iv)
    return misses


def random_scenario(rng, n_agents=20, n_segments=10, arena=12.0, accel=False):
    """Random-walk agents; CV paths are corner-continuous, accel paths smooth."""
    paths = []
    for k in range(n_agents):
        radius = float(rng.uniform(0.2, 0.6))
        p = np.array(in_disc(rng, arena))
        t = float(rng.uniform(0.0, 3.0))
        v = np.array(in_disc(rng, 1.5))
        segs = []
        for _ in range(n_segments):
            dur = float(rng.uniform(1.0, 3.0))
            if accel:
                a = np.array(in_disc(rng, 0.6))
                # steer back toward the arena
                a -= 0.05 * p
            else:
                a = None
                v = np.array(in_disc(rng, 1.5)) - 0.05 * p
            seg = Motion(tuple(map(float, p)), tuple(map(float, v)), t, t + dur, radius,
                         None if a is None else tuple(map(float, a)))
            segs.append(seg)
            p = p + v * dur + (0 if a is None else 0.5 * a * dur * dur)
            if a is not None:
                v = v + a * dur
            t += dur
        paths.append(Path(f"a{k:02d}", segs))
    return Scenario(tuple(paths), 2, "random")
