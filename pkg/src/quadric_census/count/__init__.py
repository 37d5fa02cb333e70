from .engines import (
    CountResult,
    ball_bound,
    brute_count_q,
    brute_count_w,
    count_q,
    enumerate_v_points,
    enumerate_w_points,
    fast_count_w,
    fast_count_w_grid,
    orbit_tally,
    r2,
)

__all__ = [
    "CountResult",
    "ball_bound",
    "brute_count_q",
    "brute_count_w",
    "count_q",
    "enumerate_v_points",
    "enumerate_w_points",
    "fast_count_w",
    "fast_count_w_grid",
    "orbit_tally",
    "r2",
]
