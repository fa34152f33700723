"""Vectors, motion segments, time intervals and the shared tolerance policy.

Vectors are plain tuples of floats (2 or 3 components).  Every type here is a
frozen dataclass, so values can be shared freely between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

from .errors import OutOfRangeError

Vec = Tuple[float, ...]


def as_vec(values: Sequence[float]) -> Vec:
    vec = tuple(float(x) for x in values)
    if len(vec) not in (2, 3):
        raise ValueError(f"vectors must have 2 or 3 components, got {len(vec)}")
    if not all(math.isfinite(x) for x in vec):
        raise ValueError(f"vector components must be finite, got {vec}")
    return vec


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Vec, k: float) -> Vec:
    return tuple(x * k for x in a)


def dot(a: Vec, b: Vec) -> float:
    return sum(x * y for x, y in zip(a, b))


def norm(a: Vec) -> float:
    return math.sqrt(dot(a, a))


def cross2(a: Vec, b: Vec) -> float:
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class Tolerance:
    """Numeric tolerances threaded through every computation.

    Attributes:
        eps_root: Relative cutoff for discriminants and imaginary parts.
        eps_geom: Squared-edge-distance magnitude treated as touching.
        eps_clearance: Margin used to place velocities or start times just
            outside an unsafe set.
    """

    eps_root: float = 1e-9
    eps_geom: float = 1e-9
    eps_clearance: float = 1e-6

    def __post_init__(self):
        for name in ("eps_root", "eps_geom", "eps_clearance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Motion:
    """One agent's motion segment in absolute time.

    The agent is at ``p0`` at ``t_start`` and moves with velocity ``v`` and
    optional constant acceleration ``accel`` until ``t_end`` (which may be
    ``math.inf``).
    """

    p0: Vec
    v: Vec
    t_start: float
    t_end: float
    radius: float
    accel: Optional[Vec] = None

    def __post_init__(self):
        object.__setattr__(self, "p0", as_vec(self.p0))
        object.__setattr__(self, "v", as_vec(self.v))
        if self.accel is not None:
            object.__setattr__(self, "accel", as_vec(self.accel))
        dims = {len(self.p0), len(self.v)} | ({len(self.accel)} if self.accel else set())
        if len(dims) != 1:
            raise ValueError("p0, v and accel must share one dimension")
        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "t_end", float(self.t_end))
        object.__setattr__(self, "radius", float(self.radius))
        if not math.isfinite(self.t_start) or math.isnan(self.t_end):
            raise ValueError("t_start must be finite and t_end not NaN")
        if not self.t_start < self.t_end:
            raise ValueError(f"t_start ({self.t_start}) must precede t_end ({self.t_end})")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def dim(self) -> int:
        return len(self.p0)

    @property
    def has_accel(self) -> bool:
        return self.accel is not None and any(x != 0.0 for x in self.accel)

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def accel_or_zero(self) -> Vec:
        return self.accel if self.accel is not None else (0.0,) * self.dim

    def shifted(self, offset: float) -> "Motion":
        """The same segment started ``offset`` seconds later."""
        return replace(self, t_start=self.t_start + offset, t_end=self.t_end + offset)


def _check_time(m: Motion, t: float) -> float:
    if not m.t_start <= t <= m.t_end:
        raise OutOfRangeError(f"t={t} outside segment [{m.t_start}, {m.t_end}]")
    return t - m.t_start


def position_at(m: Motion, t: float) -> Vec:
    """Position of ``m`` at absolute time ``t``.

    Raises:
        OutOfRangeError: If ``t`` is outside ``[m.t_start, m.t_end]``.
    """
    dt = _check_time(m, t)
    if dt == 0.0:
        return m.p0
    if m.accel is None:
        return tuple(p + v * dt for p, v in zip(m.p0, m.v))
    half = 0.5 * dt * dt
    return tuple(p + v * dt + a * half for p, v, a in zip(m.p0, m.v, m.accel))


def velocity_at(m: Motion, t: float) -> Vec:
    dt = _check_time(m, t)
    if m.accel is None or dt == 0.0:
        return m.v
    return tuple(v + a * dt for v, a in zip(m.v, m.accel))


@dataclass(frozen=True)
class TimeInterval:
    """An open time interval ``(lo, hi)``.

    ``instantaneous`` marks a single-instant touch (``lo == hi``), which is
    never a collision under open-interval semantics.
    """

    lo: float
    hi: float
    instantaneous: bool = False

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"interval lo ({self.lo}) exceeds hi ({self.hi})")
        if self.instantaneous and self.lo != self.hi:
            raise ValueError("instantaneous intervals must have lo == hi")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, t: float) -> bool:
        return self.lo < t < self.hi


@dataclass(frozen=True)
class Path:
    agent_id: str
    segments: Tuple[Motion, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))


def _close(a: Vec, b: Vec, eps: float) -> bool:
    # relative to coordinate magnitude so large worlds are not penalised
    limit = eps * max(1.0, norm(a), norm(b))
    return norm(sub(a, b)) <= limit


def validate_path(path: Path, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """List continuity violations of ``path``; empty when the path is valid."""
    problems = []
    segs = path.segments
    if not segs:
        problems.append(f"agent {path.agent_id}: path has no segments")
    dims = {m.dim for m in segs}
    if len(dims) > 1:
        problems.append(f"agent {path.agent_id}: segments mix dimensions {sorted(dims)}")
        return problems
    for i, (cur, nxt) in enumerate(zip(segs, segs[1:])):
        where = f"agent {path.agent_id}: segments {i}->{i + 1}"
        gap = nxt.t_start - cur.t_end
        if abs(gap) > tol.eps_geom * max(1.0, abs(cur.t_end)):
            kind = "temporal overlap" if gap < 0 else "temporal gap"
            problems.append(f"{where}: {kind} of {abs(gap):.9g} s")
            continue
        if not math.isfinite(cur.t_end):
            problems.append(f"{where}: unbounded segment followed by another")
            continue
        end_pos = position_at(cur, cur.t_end)
        if not _close(end_pos, nxt.p0, tol.eps_geom):
            problems.append(
                f"{where}: positional discontinuity of {norm(sub(end_pos, nxt.p0)):.9g} m"
            )
        if cur.has_accel or nxt.has_accel:
            end_vel = velocity_at(cur, cur.t_end)
            if not _close(end_vel, nxt.v, tol.eps_geom):
                problems.append(
                    f"{where}: velocity discontinuity of {norm(sub(end_vel, nxt.v)):.9g} m/s"
                )
    return problems
