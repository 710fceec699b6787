"""Deterministic test drawings.

All generators return a :class:`~fsdraw.model.Drawing` whose coordinates are
rounded to 12 decimals, so emitted documents are byte-stable.  ``skew``
applies the linear map ``(x, y) -> (x + y sin s, y cos s)``, which keeps
every face centrally symmetric and turns right angles into ``pi/2 - s``.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Hashable, Sequence

import numpy as np

from .geometry import TWO_PI
from .model import Drawing


def _finish(points: dict[int, tuple[float, float]], edges, skew: float = 0.0) -> Drawing:
    if not -math.pi / 2 < skew < math.pi / 2:
        raise ValueError("skew must lie strictly between -pi/2 and pi/2")
    s, c = math.sin(skew), math.cos(skew)
    out = {}
    for v, (x, y) in points.items():
        xx, yy = x + y * s, y * c
        out[v] = (round(xx, 12) + 0.0, round(yy, 12) + 0.0)
    return Drawing(out, tuple((int(u), int(v)) for u, v in edges))


def arrangement_init(ends: Sequence[Hashable]) -> dict[Hashable, float]:
    """Zone directions from the cyclic order of pseudoline ends at infinity.

    End ``j`` of ``2t`` sits at angle ``2*pi*j/(2t)`` on the unit circle; each
    zone points along the difference of its two end vectors (second minus
    first).  Returns direction angles in [0, 2*pi).
    """
    counts = Counter(ends)
    bad = [k for k, c in counts.items() if c != 2]
    if bad:
        raise ValueError(f"each pseudoline needs exactly two ends; bad labels {bad}")
    n = len(ends)
    first: dict[Hashable, int] = {}
    out: dict[Hashable, float] = {}
    for j, label in enumerate(ends):
        if label not in first:
            first[label] = j
            continue
        a, b = TWO_PI * first[label] / n, TWO_PI * j / n
        dx, dy = math.cos(b) - math.cos(a), math.sin(b) - math.sin(a)
        ang = math.atan2(dy, dx) % TWO_PI
        out[label] = 0.0 if ang > TWO_PI - 1e-12 else ang
    return out


def gen_polygon(k: int, skew: float = 0.0) -> Drawing:
    """Regular 2k-gon with unit sides, one face, k zones."""
    if k < 2:
        raise ValueError("polygon needs k >= 2")
    dirs = arrangement_init(list(range(k)) * 2)
    # Walk the 2k edge directions counterclockwise starting at angle 0.
    walk = sorted((t + h) % TWO_PI for t in dirs.values() for h in (0.0, math.pi))
    walk = sorted(0.0 if a > TWO_PI - 1e-9 else a for a in walk)
    pts = {0: (0.0, 0.0)}
    x = y = 0.0
    for i, a in enumerate(walk[:-1], start=1):
        x, y = x + math.cos(a), y + math.sin(a)
        pts[i] = (x, y)
    edges = [(i, (i + 1) % (2 * k)) for i in range(2 * k)]
    return _finish(pts, edges, skew)


def gen_grid(m: int, n: int, skew: float = 0.0) -> Drawing:
    """Unit lattice of m columns by n rows of squares; m + n zones."""
    if m < 1 or n < 1:
        raise ValueError("grid needs m, n >= 1")
    vid = lambda i, j: j * (m + 1) + i  # noqa: E731
    pts = {vid(i, j): (float(i), float(j)) for j in range(n + 1) for i in range(m + 1)}
    edges = [(vid(i, j), vid(i + 1, j)) for j in range(n + 1) for i in range(m)]
    edges += [(vid(i, j), vid(i, j + 1)) for i in range(m + 1) for j in range(n)]
    return _finish(pts, edges, skew)


def gen_fan(k: int, skew: float = 0.0) -> Drawing:
    """k rhombi around a shared centre vertex of degree k + 1.

    The k + 1 rays are equally spaced over an angular width of (k-1)*pi/k, and
    each ray starts its own zone, so the drawing has k + 1 zones.
    """
    if k < 2:
        raise ValueError("fan needs k >= 2")
    gap = (k - 1) * math.pi / k / k
    ray = [(math.cos(i * gap), math.sin(i * gap)) for i in range(k + 1)]
    pts = {0: (0.0, 0.0)}
    for i, (x, y) in enumerate(ray):
        pts[1 + i] = (x, y)
    for i in range(k):
        pts[k + 2 + i] = (ray[i][0] + ray[i + 1][0], ray[i][1] + ray[i + 1][1])
    edges = [(0, 1 + i) for i in range(k + 1)]
    for i in range(k):
        edges += [(1 + i, k + 2 + i), (2 + i, k + 2 + i)]
    return _finish(pts, edges, skew)


def gen_star(k: int, skew: float = 0.0) -> Drawing:
    """Tree with k unit rays at angles 2*pi*i/k; k zones, no interior faces."""
    if k < 1:
        raise ValueError("star needs k >= 1")
    pts = {0: (0.0, 0.0)}
    for i in range(k):
        a = TWO_PI * i / k
        pts[1 + i] = (math.cos(a), math.sin(a))
    return _finish(pts, [(0, 1 + i) for i in range(k)], skew)


def gen_rhombus(delta: float) -> Drawing:
    """Unit rhombus with zone directions 0 and delta."""
    pts = {
        0: (0.0, 0.0),
        1: (1.0, 0.0),
        2: (1.0 + math.cos(delta), math.sin(delta)),
        3: (math.cos(delta), math.sin(delta)),
    }
    return _finish(pts, [(0, 1), (1, 2), (2, 3), (3, 0)])


def jitter(drawing: Drawing, amount: float, seed: int = 0) -> Drawing:
    """Rotate every zone by a seeded uniform angle in [-amount, amount].

    Face symmetry is kept because placement goes through shared zone vectors;
    large amounts can still break convexity, which ingest will reject.
    """
    from .layout import apply_rotations, place_vertices
    from .model import derive_embedding, derive_zones

    zones = derive_zones(derive_embedding(drawing))
    rng = np.random.default_rng(seed)
    d = rng.uniform(-amount, amount, size=len(zones))
    out = place_vertices(drawing, zones, apply_rotations(zones, d, "preserve"))
    return _finish(out.vertices, out.edges)


GENERATORS = {"polygon": gen_polygon, "grid": gen_grid, "fan": gen_fan, "star": gen_star}
