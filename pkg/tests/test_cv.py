import numpy as np
import pytest

from helpers import oracle_collides, random_cv_pair, unmatched
from swept_circle.cv import cv_coefficients, cv_collision_interval, overlap_window
from swept_circle.errors import EmptyOverlapError, WrongModelError
from swept_circle.geometry import Motion
from swept_circle.oracle import sample_pair


def head_on(t_end=10.0, t2=0.0):
    return (Motion((0, 0), (1, 0), 0, t_end, 1),
            Motion((10, 0), (-1, 0), t2, t2 + t_end if t2 else t_end, 1))


def test_head_on_coefficients():
    q = cv_coefficients(*head_on())
    assert (q.a, q.b, q.c) == (4, -40, 96)


def test_staggered_start_projects_earlier_agent():
    m1 = Motion((0, 0), (1, 0), 0, 10, 1)
    m2 = Motion((10, 0), (-1, 0), 2, 12, 1)
    q = cv_coefficients(m1, m2)
    assert (q.a, q.b, q.c) == pytest.approx((4, -32, 60))


def test_identical_motions_overlap_permanently():
    m = Motion((3, 4), (1, 1), 0, 5, 0.5)
    q = cv_coefficients(m, m)
    assert (q.a, q.b, q.c) == (0, 0, -1)
    iv = cv_collision_interval(m, m)
    assert (iv.lo, iv.hi) == (0, 5)


def test_head_on_interval():
    iv = cv_collision_interval(*head_on())
    assert (iv.lo, iv.hi) == pytest.approx((4, 6), abs=1e-12)


def test_head_on_clipped_by_segment_end():
    iv = cv_collision_interval(*head_on(t_end=5.0))
    assert (iv.lo, iv.hi) == pytest.approx((4, 5), abs=1e-12)


def test_grazing_contact_is_not_a_collision():
    m1 = Motion((0, 0), (1, 0), 0, 10, 1)
    m2 = Motion((0, 2), (1, 0), 0, 10, 1)
    assert cv_collision_interval(m1, m2) is None
    m3 = Motion((5, 2), (0, 0), 0, 10, 1)  # edge touches at t=5 only
    assert cv_collision_interval(m1, m3) is None


def test_disjoint_time_windows():
    m1 = Motion((0, 0), (1, 0), 0, 1, 1)
    m2 = Motion((0, 0), (1, 0), 1, 2, 1)
    with pytest.raises(EmptyOverlapError):
        overlap_window(m1, m2)


def test_accel_input_is_rejected():
    m1 = Motion((0, 0), (1, 0), 0, 1, 1, accel=(1, 0))
    with pytest.raises(WrongModelError):
        cv_coefficients(m1, m1)


def test_symmetry_translation_and_galilean_invariance():
    rng = np.random.default_rng(3)
    for _ in range(100):
        m1, m2 = random_cv_pair(rng)
        base = cv_collision_interval(m1, m2)
        swapped = cv_collision_interval(m2, m1)
        shift = tuple(rng.uniform(-5, 5, 2))
        boost = tuple(rng.uniform(-1, 1, 2))

        def moved(m):
            p0 = tuple(p + s + b * m.t_start for p, s, b in zip(m.p0, shift, boost))
            v = tuple(vi + b for vi, b in zip(m.v, boost))
            return Motion(p0, v, m.t_start, m.t_end, m.radius)

        boosted = cv_collision_interval(moved(m1), moved(m2))
        for other in (swapped, boosted):
            assert (base is None) == (other is None)
            if base is not None and base.width > 1e-6:
                assert (other.lo, other.hi) == pytest.approx((base.lo, base.hi), abs=1e-7)


def test_matches_sampling_oracle():
    rng = np.random.default_rng(17)
    for _ in range(60):
        m1, m2 = random_cv_pair(rng)
        iv = cv_collision_interval(m1, m2)
        report = sample_pair(m1, m2, 1e-3)
        found = [] if iv is None else [iv]
        assert not unmatched(report.crossing_intervals, found, 1e-3, 1e-3)
        assert not unmatched(found, report.crossing_intervals, 1e-3, 1e-3)
        if iv is None:
            assert not oracle_collides(m1, m2, 1e-3, depth=1e-6)
