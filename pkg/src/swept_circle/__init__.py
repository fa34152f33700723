"""Exact collision intervals, unsafe start-time intervals and velocity
adjustments for moving circular and spherical agents."""

from .accel import QuarticCoefficients, accel_coefficients, accel_collision_intervals
from .accel_delay import SearchConfig, unsafe_interval_accel
from .cv import QuadCoefficients, cv_coefficients, cv_collision_interval
from .delay import (ConicCoefficients, Degenerate, UnsafeDelayResult, collision_times_at_extrema,
                    conic_coefficients, delay_at_time, delay_range, min_collision_time,
                    unsafe_interval_segmented)
from .geometry import (DEFAULT_TOL, Motion, Path, TimeInterval, Tolerance, position_at,
                       validate_path)
from .oracle import SamplingReport, sample_pair
from .roots import RealRoots, solve_quadratic, solve_quartic
from .scenario import ConflictReport, Scenario, broad_phase, check_scenario, load_scenario
from .vo import (ActionKind, AvoidanceAction, VelocityObstacle, construct_vo,
                 min_velocity_change, segment_ray_intersections, vo_contains)

__version__ = "0.1.0"
