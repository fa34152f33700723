"""Real roots of quadratics, cubics and quartics, and sign partitioning.

The quartic path is closed-form (Ferrari, via the resolvent cubic) followed by
Newton polishing of every real root.  When the closed form produces
non-finite values or a poor residual, the roots are recomputed from the
companion matrix eigenvalues instead.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .geometry import DEFAULT_TOL, Tolerance

# Leading coefficients below this fraction of the largest one are dropped.
_DEGREE_DROP = 1e-14
_NEWTON_STEPS = 40


@dataclass(frozen=True)
class RealRoots:
    """Sorted distinct real roots paired with their multiplicities."""

    roots: tuple[tuple[float, int], ...] = ()

    @property
    def values(self) -> list[float]:
        return [r for r, _ in self.roots]

    def __iter__(self) -> Iterator[tuple[float, int]]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)


def polyval(coeffs: Sequence[float], x: float) -> float:
    """Evaluate a polynomial given highest-degree coefficient first."""
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _normalized(coeffs: Sequence[float]) -> list[float] | None:
    coeffs = [float(c) for c in coeffs]
    if not all(math.isfinite(c) for c in coeffs):
        raise ValueError(f"polynomial coefficients must be finite, got {coeffs}")
    biggest = max(abs(c) for c in coeffs)
    if biggest == 0.0:
        return None
    return [c / biggest for c in coeffs]


def _strip_leading(coeffs: list[float]) -> list[float]:
    i = 0
    while i < len(coeffs) - 1 and abs(coeffs[i]) <= _DEGREE_DROP:
        i += 1
    return coeffs[i:]


def _merge(values: list[float], tol: Tolerance) -> RealRoots:
    values = sorted(values)
    out: list[tuple[float, int]] = []
    cluster: list[float] = []
    for v in values:
        if cluster and v - cluster[-1] > tol.eps_root * (1.0 + abs(cluster[-1])):
            out.append((sum(cluster) / len(cluster), len(cluster)))
            cluster = []
        cluster.append(v)
    if cluster:
        out.append((sum(cluster) / len(cluster), len(cluster)))
    return RealRoots(tuple(out))


def _linear(b: float, c: float) -> RealRoots:
    if abs(b) <= _DEGREE_DROP:
        return RealRoots()
    return RealRoots(((-c / b, 1),))


def solve_quadratic(a: float, b: float, c: float, tol: Tolerance = DEFAULT_TOL) -> RealRoots:
    """Real roots of ``a*x**2 + b*x + c``.

    A discriminant within ``eps_root`` of zero, relative to the magnitude of
    the terms it is computed from, is reported as one double root.  With a
    vanishing leading coefficient the equation is solved as linear; with both
    ``a`` and ``b`` vanishing there are no roots, whatever ``c`` is.
    """
    norm = _normalized((a, b, c))
    if norm is None:
        return RealRoots()
    a, b, c = norm
    if abs(a) <= _DEGREE_DROP:
        return _linear(b, c)
    disc = b * b - 4.0 * a * c
    if abs(disc) <= tol.eps_root * max(b * b, abs(4.0 * a * c)):
        return RealRoots(((-b / (2.0 * a), 2),))
    if disc < 0.0:
        return RealRoots()
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    r1, r2 = sorted((q / a, c / q))
    return RealRoots(((r1, 1), (r2, 1)))


def _cubic_complex(b: float, c: float, d: float) -> list[complex]:
    """Roots of the monic cubic ``x**3 + b*x**2 + c*x + d``."""
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    delta = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if delta > 0.0 or p > 0.0:
        # p > 0 means one real root even when (p/3)^3 underflows to zero
        w = -q / 2.0 - math.copysign(math.sqrt(delta), q)
        if w == 0.0:
            im = math.sqrt(max(p, 0.0))
            ys = [0j, complex(0.0, im), complex(0.0, -im)]
        else:
            u = math.copysign(abs(w) ** (1.0 / 3.0), w)
            v = -p / (3.0 * u)
            re = -(u + v) / 2.0
            im = math.sqrt(3.0) / 2.0 * (u - v)
            ys = [complex(u + v), complex(re, im), complex(re, -im)]
    elif p == 0.0:
        ys = [0j, 0j, 0j]
    else:
        r = math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, (3.0 * q) / (2.0 * p) * math.sqrt(-3.0 / p)))
        phi = math.acos(arg)
        ys = [complex(2.0 * r * math.cos(phi / 3.0 - 2.0 * math.pi * k / 3.0)) for k in range(3)]
    return [y - shift for y in ys]


def _newton(coeffs: Sequence[float], x: float) -> float:
    deriv = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
    fx = polyval(coeffs, x)
    for _ in range(_NEWTON_STEPS):
        if fx == 0.0:
            break
        dfx = polyval(deriv, x)
        if dfx == 0.0:
            break
        nx = x - fx / dfx
        fnx = polyval(coeffs, nx)
        if not abs(fnx) < abs(fx):
            break
        x, fx = nx, fnx
    return x


def _quartic_complex(b: float, c: float, d: float, e: float) -> list[complex]:
    """Roots of the monic quartic ``x**4 + b*x**3 + c*x**2 + d*x + e`` (Ferrari)."""
    shift = b / 4.0
    p = c - 3.0 * b * b / 8.0
    q = d - b * c / 2.0 + b ** 3 / 8.0
    r = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b ** 4 / 256.0
    size = max(1.0, abs(p), math.sqrt(abs(r)))
    if abs(q) <= 1e-14 * size ** 1.5:
        # biquadratic y^4 + p y^2 + r
        root = cmath.sqrt(p * p - 4.0 * r)
        zs = [(-p + root) / 2.0, (-p - root) / 2.0]
        ys = [s * cmath.sqrt(z) for z in zs for s in (1.0, -1.0)]
    else:
        resolvent = [1.0, p, p * p / 4.0 - r, -q * q / 8.0]
        cands = _cubic_complex(*resolvent[1:])
        m = max(z.real for z in cands if abs(z.imag) <= 1e-7 * max(1.0, abs(z)))
        m = _newton(resolvent, m)
        if m <= 0.0:
            return []
        s = math.sqrt(2.0 * m)
        k = q / (2.0 * s)
        ys = []
        for sign in (1.0, -1.0):
            # y^2 + sign*s*y + (p/2 + m - sign*k)
            bb, cc = sign * s, p / 2.0 + m - sign * k
            root = cmath.sqrt(bb * bb - 4.0 * cc)
            ys += [(-bb + root) / 2.0, (-bb - root) / 2.0]
    return [y - shift for y in ys]


def _finalize(coeffs: list[float], zs: list[complex], tol: Tolerance) -> RealRoots | None:
    """Polish and classify candidate roots; None when the candidates are unusable."""
    if len(zs) != len(coeffs) - 1 or not all(cmath.isfinite(z) for z in zs):
        return None
    scale = max(abs(c) for c in coeffs)
    reals = []
    for z in zs:
        if abs(z.imag) <= tol.eps_root * max(1.0, abs(z)):
            reals.append(_newton(coeffs, z.real))
        elif abs(np.polyval(coeffs, z)) > 1e-6 * scale * max(1.0, abs(z)) ** (len(coeffs) - 1):
            return None
    for x in reals:
        if abs(polyval(coeffs, x)) > 1e-9 * scale * max(1.0, abs(x)) ** (len(coeffs) - 1):
            return None
    return _merge(reals, tol)


def _solve_normalized(coeffs: list[float], tol: Tolerance) -> RealRoots:
    coeffs = _strip_leading(coeffs)
    degree = len(coeffs) - 1
    if degree <= 0:
        return RealRoots()
    if degree == 1:
        return _linear(coeffs[0], coeffs[1])
    if degree == 2:
        return solve_quadratic(*coeffs, tol=tol)
    lead = coeffs[0]
    monic = [c / lead for c in coeffs[1:]]
    zs = _cubic_complex(*monic) if degree == 3 else _quartic_complex(*monic)
    result = _finalize(coeffs, zs, tol)
    if result is None:
        result = _finalize(coeffs, list(np.roots(coeffs).astype(complex)), tol)
    if result is None:
        # last resort: keep the companion roots without the residual gate
        zs = np.roots(coeffs)
        reals = [_newton(coeffs, z.real) for z in zs
                 if abs(z.imag) <= tol.eps_root * max(1.0, abs(z))]
        result = _merge(reals, tol)
    return result


def solve_cubic(a: float, b: float, c: float, d: float,
                tol: Tolerance = DEFAULT_TOL) -> RealRoots:
    norm = _normalized((a, b, c, d))
    return RealRoots() if norm is None else _solve_normalized(norm, tol)


def solve_quartic(a: float, b: float, c: float, d: float, e: float,
                  tol: Tolerance = DEFAULT_TOL) -> RealRoots:
    """Real roots of ``a*x**4 + b*x**3 + c*x**2 + d*x + e``.

    Complex-conjugate pairs are discarded; roots whose imaginary part is
    within ``eps_root`` (relative) are snapped to the real axis.  Roots closer
    than ``eps_root * (1 + |r|)`` merge into one root of higher multiplicity.
    Vanishing leading coefficients degrade to the cubic, quadratic or linear
    case.
    """
    norm = _normalized((a, b, c, d, e))
    return RealRoots() if norm is None else _solve_normalized(norm, tol)


def solve_poly(coeffs: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> RealRoots:
    """Dispatch on degree (at most four); coefficients highest degree first."""
    if not 1 <= len(coeffs) <= 5:
        raise ValueError("only polynomials up to degree four are supported")
    norm = _normalized(coeffs)
    return RealRoots() if norm is None else _solve_normalized(norm, tol)


def _derivative(coeffs: Sequence[float]) -> list[float]:
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])] or [0.0]


def _probe(x0: float, x1: float) -> float:
    if math.isinf(x0) and math.isinf(x1):
        return 0.0
    if math.isinf(x1):
        return x0 + 1.0 + abs(x0)
    if math.isinf(x0):
        return x1 - 1.0 - abs(x1)
    return 0.5 * (x0 + x1)


def negative_intervals(coeffs: Sequence[float], lo: float, hi: float,
                       tol: Tolerance = DEFAULT_TOL) -> list[tuple[float, float]]:
    """Sub-intervals of ``[lo, hi]`` where the polynomial dips below ``-eps_geom``.

    Real roots split ``[lo, hi]`` into pieces.  Each piece is classified by
    evaluating the polynomial at its midpoint, at interior critical points
    and at the clip bounds, so the result never relies on root ordering
    alone.  A piece whose lowest value is not below ``-eps_geom`` is a touch,
    not an overlap.  Adjacent negative pieces are merged.
    """
    roots = solve_poly(coeffs, tol)
    cuts = [lo] + [r for r in roots.values if lo < r < hi] + [hi]
    crits = solve_poly(_derivative(coeffs), tol).values if len(coeffs) > 2 else []
    out: list[tuple[float, float]] = []
    for x0, x1 in zip(cuts, cuts[1:]):
        if not x1 > x0:
            continue
        probes = [_probe(x0, x1)] + [x for x in crits if x0 < x < x1]
        probes += [x for x in (x0, x1) if math.isfinite(x) and x in (lo, hi)]
        if min(polyval(coeffs, x) for x in probes) < -tol.eps_geom:
            if out and out[-1][1] == x0:
                out[-1] = (out[-1][0], x1)
            else:
                out.append((x0, x1))
    return out
