import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fsdraw.geometry import TWO_PI, angle_0_2pi, angle_diff, angle_mod_pi, direction, find_crossings

PI = math.pi


@pytest.mark.parametrize(
    "x, expected",
    [(0.0, TWO_PI), (PI, PI), (-PI / 2, 3 * PI / 2), (TWO_PI, TWO_PI), (5 * PI, PI), (1e-14, TWO_PI)],
)
def test_angle_0_2pi(x, expected):
    assert angle_0_2pi(x) == pytest.approx(expected)


@given(st.floats(-50.0, 50.0))
def test_angle_ranges(x):
    a = angle_0_2pi(x)
    assert 0.0 < a <= TWO_PI
    assert -PI < angle_diff(x) <= PI
    assert 0.0 <= angle_mod_pi(x) < PI
    # the normalized values are congruent to x
    assert math.isclose(math.cos(a), math.cos(x), abs_tol=1e-9)
    assert math.isclose(math.sin(angle_diff(x)), math.sin(x), abs_tol=1e-9)


def test_direction():
    assert direction((0.0, 0.0), (0.0, 2.0)) == pytest.approx(PI / 2)
    assert direction((1.0, 1.0), (0.0, 1.0)) == pytest.approx(PI)


def _pts(*xy):
    return np.array(xy, dtype=float)


def test_crossing_detected():
    coords = _pts((0, 0), (2, 2), (0, 2), (2, 0))
    assert find_crossings(coords, [(0, 1), (2, 3)], 1e-9)


def test_shared_endpoint_is_fine():
    coords = _pts((0, 0), (1, 0), (0, 1))
    assert not find_crossings(coords, [(0, 1), (0, 2)], 1e-9)


def test_collinear_overlap_detected():
    coords = _pts((0, 0), (2, 0), (1, 0))
    assert find_crossings(coords, [(0, 1), (0, 2)], 1e-9)


def test_touching_vertex_detected():
    # vertex 2 lies on segment 0-1 without being its endpoint
    coords = _pts((0, 0), (2, 0), (1, 0), (1, 1))
    assert find_crossings(coords, [(0, 1), (2, 3)], 1e-9)


def test_limit_stops_early():
    # a comb of vertical segments crossed by one long horizontal
    n = 20
    pts = [(i, -1.0) for i in range(n)] + [(i, 1.0) for i in range(n)] + [(-1.0, 0.0), (n, 0.0)]
    segs = [(i, n + i) for i in range(n)] + [(2 * n, 2 * n + 1)]
    assert len(find_crossings(_pts(*pts), segs, 1e-9)) == n
    assert len(find_crossings(_pts(*pts), segs, 1e-9, limit=1)) == 1


def test_brute_force_agreement():
    rng = np.random.default_rng(5)
    for _ in range(20):
        coords = rng.uniform(0, 10, size=(12, 2))
        segs = [(2 * i, 2 * i + 1) for i in range(6)]
        found = {tuple(sorted(p)) for p in find_crossings(coords, segs, 1e-9)}
        expected = set()
        for i in range(6):
            for j in range(i + 1, 6):
                if _segments_cross(coords[segs[i][0]], coords[segs[i][1]], coords[segs[j][0]], coords[segs[j][1]]):
                    expected.add((i, j))
        assert found == expected


def _segments_cross(p, q, r, s):
    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    return orient(p, q, r) * orient(p, q, s) < 0 and orient(r, s, p) * orient(r, s, q) < 0
