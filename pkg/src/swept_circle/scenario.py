"""Whole-scenario conflict checking: swept-AABB broad phase plus exact narrow phase."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import jsonschema

from .accel import accel_collision_intervals
from .cv import cv_collision_interval
from .errors import ScenarioError
from .geometry import DEFAULT_TOL, Motion, Path, TimeInterval, Tolerance, validate_path

_VEC = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 3}

SCENARIO_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dimension", "agents"],
    "properties": {
        "name": {"type": "string"},
        "dimension": {"enum": [2, 3]},
        "agents": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "radius", "segments"],
                "properties": {
                    "id": {"type": "string"},
                    "radius": {"type": "number", "exclusiveMinimum": 0},
                    "segments": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["p0", "v", "t_start", "t_end"],
                            "properties": {
                                "p0": _VEC,
                                "v": _VEC,
                                "accel": _VEC,
                                "t_start": {"type": "number"},
                                "t_end": {"type": "number"},
                            },
                        },
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Scenario:
    agents: tuple[Path, ...]
    dimension: int = 2
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))

    def agent(self, agent_id: str) -> Path:
        for path in self.agents:
            if path.agent_id == agent_id:
                return path
        raise KeyError(f"no agent named {agent_id!r}")

    def segment(self, agent_id: str, index: int) -> Motion:
        segs = self.agent(agent_id).segments
        if not 0 <= index < len(segs):
            raise KeyError(f"agent {agent_id!r} has no segment {index}")
        return segs[index]


def scenario_violations(s: Scenario, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    problems = []
    if s.dimension not in (2, 3):
        problems.append(f"dimension must be 2 or 3, got {s.dimension}")
    seen = set()
    for path in s.agents:
        if path.agent_id in seen:
            problems.append(f"duplicate agent id {path.agent_id!r}")
        seen.add(path.agent_id)
        for i, m in enumerate(path.segments):
            if m.dim != s.dimension:
                problems.append(f"agent {path.agent_id}: segment {i} is {m.dim}D "
                                f"in a {s.dimension}D scenario")
        problems += validate_path(path, tol)
    return problems


def validate_scenario(s: Scenario, tol: Tolerance = DEFAULT_TOL) -> None:
    problems = scenario_violations(s, tol)
    if problems:
        raise ScenarioError(problems)


@dataclass(frozen=True)
class SegmentRef:
    agent: int
    index: int


@dataclass(frozen=True)
class ConflictReport:
    agent_a: str
    agent_b: str
    seg_a: int
    seg_b: int
    interval: TimeInterval
    kind: str  # "cv" or "accel"


def _axis_extent(p: float, v: float, a: float, dt: float) -> tuple[float, float]:
    if math.isinf(dt):
        if a > 0 or (a == 0 and v > 0):
            return p, math.inf
        if a < 0 or (a == 0 and v < 0):
            return -math.inf, p
        return p, p
    pts = [p, p + v * dt + 0.5 * a * dt * dt]
    if a != 0.0:
        t_turn = -v / a
        if 0.0 < t_turn < dt:
            pts.append(p + v * t_turn + 0.5 * a * t_turn * t_turn)
    return min(pts), max(pts)


def swept_aabb(m: Motion) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Spatial box swept by the disc over its whole segment."""
    acc = m.accel_or_zero()
    lo, hi = [], []
    for p, v, a in zip(m.p0, m.v, acc):
        x0, x1 = _axis_extent(p, v, a, m.duration)
        lo.append(x0 - m.radius)
        hi.append(x1 + m.radius)
    return tuple(lo), tuple(hi)


def broad_phase(s: Scenario) -> list[tuple[SegmentRef, SegmentRef]]:
    """Segment pairs of different agents whose space-time boxes overlap.

    Sort-and-sweep on start time, then a spatial box test.  The result is a
    superset of the truly conflicting pairs.  Pairs are ordered by agent
    index, then segment index.
    """
    items = []
    for ai, path in enumerate(s.agents):
        for si, m in enumerate(path.segments):
            lo, hi = swept_aabb(m)
            items.append((m.t_start, m.t_end, lo, hi, SegmentRef(ai, si)))
    items.sort(key=lambda it: (it[0], it[4].agent, it[4].index))
    pairs = []
    active: list = []
    for it in items:
        start = it[0]
        active = [a for a in active if a[1] > start]
        for other in active:
            if other[4].agent == it[4].agent:
                continue
            if all(l1 <= h2 and l2 <= h1 for l1, h1, l2, h2 in zip(it[2], it[3], other[2], other[3])):
                a, b = sorted((other[4], it[4]), key=lambda r: (r.agent, r.index))
                pairs.append((a, b))
        active.append(it)
    pairs.sort(key=lambda p: (p[0].agent, p[1].agent, p[0].index, p[1].index))
    return pairs


def narrow_phase(s: Scenario, a: SegmentRef, b: SegmentRef,
                 tol: Tolerance = DEFAULT_TOL) -> list[ConflictReport]:
    pa, pb = s.agents[a.agent], s.agents[b.agent]
    m1, m2 = pa.segments[a.index], pb.segments[b.index]
    if m1.has_accel or m2.has_accel:
        kind, found = "accel", accel_collision_intervals(m1, m2, tol)
    else:
        iv = cv_collision_interval(m1, m2, tol)
        kind, found = "cv", ([iv] if iv is not None else [])
    return [ConflictReport(pa.agent_id, pb.agent_id, a.index, b.index, iv, kind) for iv in found]


def sort_reports(reports: Iterable[ConflictReport]) -> list[ConflictReport]:
    return sorted(reports, key=lambda r: (r.interval.lo, r.agent_a, r.agent_b, r.seg_a, r.seg_b,
                                          r.interval.hi))


def check_scenario(s: Scenario, tol: Tolerance = DEFAULT_TOL,
                   pairs: Optional[list[tuple[SegmentRef, SegmentRef]]] = None
                   ) -> list[ConflictReport]:
    """Exact conflicts of a scenario, sorted by interval start then agent ids.

    ``pairs`` overrides the broad phase (e.g. with all pairs for auditing).

    Raises:
        ScenarioError: If the scenario fails validation.
    """
    validate_scenario(s, tol)
    if pairs is None:
        pairs = broad_phase(s)
    reports = []
    for a, b in pairs:
        ma, mb = s.agents[a.agent].segments[a.index], s.agents[b.agent].segments[b.index]
        if max(ma.t_start, mb.t_start) < min(ma.t_end, mb.t_end):
            reports += narrow_phase(s, a, b, tol)
    return sort_reports(reports)


def all_pairs(s: Scenario) -> list[tuple[SegmentRef, SegmentRef]]:
    refs = [SegmentRef(ai, si) for ai, p in enumerate(s.agents) for si in range(len(p.segments))]
    return [(a, b) for i, a in enumerate(refs) for b in refs[i + 1:] if a.agent != b.agent]


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a scenario from parsed JSON.

    Raises:
        ScenarioError: On schema violations or invalid motions.
    """
    try:
        jsonschema.validate(doc, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"{where}: {exc.message}") from None
    paths = []
    try:
        for agent in doc["agents"]:
            segs = [Motion(p0=seg["p0"], v=seg["v"], accel=seg.get("accel"),
                           t_start=seg["t_start"], t_end=seg["t_end"], radius=agent["radius"])
                    for seg in agent["segments"]]
            paths.append(Path(agent["id"], segs))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    return Scenario(tuple(paths), doc["dimension"], doc.get("name", ""))


def scenario_to_dict(s: Scenario) -> dict:
    agents = []
    for path in s.agents:
        radii = {m.radius for m in path.segments}
        if len(radii) > 1:
            raise ScenarioError(f"agent {path.agent_id}: file format needs one radius per agent")
        segs = []
        for m in path.segments:
            seg = {"p0": list(m.p0), "v": list(m.v), "t_start": m.t_start, "t_end": m.t_end}
            if m.accel is not None:
                seg["accel"] = list(m.accel)
            segs.append(seg)
        agents.append({"id": path.agent_id, "radius": path.segments[0].radius, "segments": segs})
    doc = {"dimension": s.dimension, "agents": agents}
    if s.name:
        doc["name"] = s.name
    return doc


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"malformed JSON: {exc}") from None
    return scenario_from_dict(doc)


def dump_scenario(s: Scenario) -> str:
    # repr-based float output keeps the round trip exact
    return json.dumps(scenario_to_dict(s), indent=2)
