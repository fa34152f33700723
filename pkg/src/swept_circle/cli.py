"""``swept-circle`` command line interface.

Exit codes: 0 success (no conflicts for ``check``), 1 conflicts found,
2 input error, 3 degenerate conic for ``plot-data --what ellipse``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .accel import accel_coefficients
from .accel_delay import SearchConfig, unsafe_interval_accel
from .cv import overlap_window
from .delay import conic_coefficients, degeneracy, delay_at_time, ellipse_center, \
    unsafe_interval_segmented
from .errors import ConvergenceError, SweptCircleError, UnsupportedDimensionError
from .geometry import Motion
from .roots import polyval
from .scenario import Scenario, check_scenario, load_scenario
from .vo import ActionKind, min_velocity_change, with_velocity

EXIT_OK, EXIT_CONFLICTS, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3


def _num(x: float) -> str:
    return f"{x:.9g}"


def _json_num(x: float):
    return float(_num(x)) if math.isfinite(x) else _num(x)


def _seg_ref(text: str) -> tuple[str, int]:
    agent, sep, index = text.rpartition(":")
    if not sep or not agent:
        raise argparse.ArgumentTypeError(f"expected <agent-id>:<segment>, got {text!r}")
    try:
        return agent, int(index)
    except ValueError:
        raise argparse.ArgumentTypeError(f"segment index must be an integer in {text!r}") from None


def _pair(s: Scenario, a, b) -> tuple[Motion, Motion]:
    return s.segment(*a), s.segment(*b)


def cmd_check(args, out) -> int:
    s = load_scenario(args.file)
    reports = check_scenario(s)
    if args.json:
        doc = {"conflicts": [
            {"agent_a": r.agent_a, "agent_b": r.agent_b, "seg_a": r.seg_a, "seg_b": r.seg_b,
             "t_lo": _json_num(r.interval.lo), "t_hi": _json_num(r.interval.hi), "kind": r.kind}
            for r in reports]}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for r in reports:
            out.write(f"{r.agent_a} {r.agent_b} {r.seg_a} {r.seg_b} "
                      f"{r.interval.lo:.6f} {r.interval.hi:.6f}\n")
    return EXIT_CONFLICTS if reports else EXIT_OK


def _interval(iv) -> str:
    return f"({_num(iv.lo)}, {_num(iv.hi)})"


def cmd_unsafe_interval(args, out) -> int:
    s = load_scenario(args.file)
    m1, m2 = _pair(s, args.a1, args.a2)
    tag1, tag2 = f"{args.a1[0]}:{args.a1[1]}", f"{args.a2[0]}:{args.a2[1]}"
    if args.accel:
        try:
            iv = unsafe_interval_accel(m1, m2, SearchConfig(accuracy=args.accuracy))
        except ConvergenceError as exc:
            out.write(f"search did not converge: {exc}\n")
            return EXIT_INPUT
        if iv is None:
            out.write("NO COLLISION\n")
            return EXIT_OK
        other_lo = m2.t_start - (iv.hi - m1.t_start)
        other_hi = m2.t_start - (iv.lo - m1.t_start)
        out.write(f"{tag1} unsafe start interval: {_interval(iv)}\n")
        out.write(f"{tag2} unsafe start interval: ({_num(other_lo)}, {_num(other_hi)})\n")
        return EXIT_OK
    res = unsafe_interval_segmented(m1, m2)
    if res.degenerate_kind is not None:
        out.write(f"degenerate: {res.degenerate_kind.value}\n")
    if not res.collides:
        out.write("NO COLLISION\n")
        return EXIT_OK
    out.write(f"{tag1} unsafe start interval: {_interval(res.unsafe_start_interval)}\n")
    out.write(f"{tag2} unsafe start interval: {_interval(res.agent2_start_interval)}\n")
    return EXIT_OK


def cmd_avoid(args, out) -> int:
    s = load_scenario(args.file)
    if s.dimension != 2:
        raise UnsupportedDimensionError("avoid supports 2D scenarios only")
    m1, m2 = _pair(s, args.a, args.b)
    action = min_velocity_change(m1, m2, args.vmax_a, args.vmax_b, allow_wait=args.allow_wait)
    if action.kind is ActionKind.NO_COLLISION:
        out.write("no-collision\n")
    elif action.kind in (ActionKind.NEW_VELOCITY_A, ActionKind.NEW_VELOCITY_B):
        who = "A" if action.kind is ActionKind.NEW_VELOCITY_A else "B"
        vx, vy = action.velocity
        out.write(f"new-velocity {who} ({_num(vx)}, {_num(vy)})\n")
        if who == "A":
            check = check_pair(with_velocity(m1, action.velocity), m2)
        else:
            check = check_pair(m1, with_velocity(m2, action.velocity))
        out.write(f"verify: {check}\n")
    elif action.kind is ActionKind.WAIT:
        out.write(f"wait delay={_num(action.delay)}\n")
        out.write(f"verify: {check_pair(m1.shifted(action.delay), m2)}\n")
    else:
        out.write("NO SOLUTION\n")
    return EXIT_OK


def check_pair(m1: Motion, m2: Motion) -> str:
    from .cv import cv_collision_interval
    from .errors import EmptyOverlapError
    try:
        iv = cv_collision_interval(m1, m2)
    except EmptyOverlapError:
        iv = None
    return "collision interval empty" if iv is None else f"collision {_interval(iv)}"


def cmd_plot_data(args, out, err) -> int:
    s = load_scenario(args.file)
    m1, m2 = _pair(s, args.a1, args.a2)
    n = args.samples
    if args.what == "sqdist":
        t0, tmax = overlap_window(m1, m2)
        if not math.isfinite(tmax):
            raise SweptCircleError("sqdist plots need bounded segments")
        q = accel_coefficients(m1, m2).as_tuple()
        out.write("t,sqEdgeDist\n")
        for t in np.linspace(t0, tmax, n):
            out.write(f"{_num(t)},{_num(polyval(q, t - t0))}\n")
        return EXIT_OK
    cc = conic_coefficients(m1, m2)
    kind = degeneracy(cc)
    if kind is not None:
        err.write(f"degenerate conic ({kind.value}); no ellipse to plot\n")
        return EXIT_DEGENERATE
    k = cc.det
    inner = (2 * cc.B * cc.E - 4 * cc.C * cc.D) ** 2 + 4 * k * (cc.E ** 2 - 4 * cc.C * cc.F)
    if inner <= 0:
        err.write("the agents never overlap for any delay; the ellipse is empty\n")
        return EXIT_DEGENERATE
    center_t, center_d = ellipse_center(cc)
    half = math.sqrt(inner) / (2 * k)
    out.write("center_t,center_delta\n")
    out.write(f"{_num(center_t)},{_num(center_d)}\n")
    out.write("t,delta\n")
    # cosine spacing packs samples near the vertical tangents
    ts = center_t - half * np.cos(np.linspace(0.0, math.pi, max(n, 2)))
    lower = [(t, delay_at_time(cc, t, "lower")) for t in ts]
    upper = [(t, delay_at_time(cc, t, "upper")) for t in ts[::-1]]
    for t, d in lower + upper:
        if d is not None:
            out.write(f"{_num(t)},{_num(d)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swept-circle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report every conflict in a scenario")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text lines")

    p = sub.add_parser("unsafe-interval", help="unsafe start times for a segment pair")
    p.add_argument("file")
    p.add_argument("--a1", type=_seg_ref, required=True, metavar="ID:SEG")
    p.add_argument("--a2", type=_seg_ref, required=True, metavar="ID:SEG")
    p.add_argument("--accel", action="store_true", help="use the bisection search")
    p.add_argument("--accuracy", type=float, default=1e-6)

    p = sub.add_parser("avoid", help="minimum velocity change or wait to avoid a conflict")
    p.add_argument("file")
    p.add_argument("--a", type=_seg_ref, required=True, metavar="ID:SEG")
    p.add_argument("--b", type=_seg_ref, required=True, metavar="ID:SEG")
    p.add_argument("--vmax-a", type=float, required=True)
    p.add_argument("--vmax-b", type=float, required=True)
    p.add_argument("--allow-wait", action="store_true")

    p = sub.add_parser("plot-data", help="CSV for squared-distance curves or delay ellipses")
    p.add_argument("file")
    p.add_argument("--a1", type=_seg_ref, required=True, metavar="ID:SEG")
    p.add_argument("--a2", type=_seg_ref, required=True, metavar="ID:SEG")
    p.add_argument("--what", choices=("sqdist", "ellipse"), required=True)
    p.add_argument("--samples", type=int, default=100)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "check":
            return cmd_check(args, out)
        if args.command == "unsafe-interval":
            return cmd_unsafe_interval(args, out)
        if args.command == "avoid":
            return cmd_avoid(args, out)
        if args.samples < 2:
            raise SweptCircleError("--samples must be at least 2")
        return cmd_plot_data(args, out, err)
    except (SweptCircleError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"error: {msg}\n")
        return EXIT_INPUT
