"""Independent checks on a drawing, plus a Floyd-Warshall oracle for the optimum.

Every check works directly from coordinates.  Combinatorial structure (faces,
boundary, rotation order) comes from a reference embedding, normally the
input drawing, so a broken output cannot hide by re-tracing its own faces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .aux_graph import AuxGraph
from .geometry import EPS_GEOM, TWO_PI, angle_0_2pi, find_crossings
from .model import Drawing, Embedding, is_connected, trace_faces

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
CHECKS = ("central_symmetry", "interior_convexity", "winding_range", "planarity", "rotation_order")


def measure_resolution(drawing: Drawing) -> float | None:
    """Smallest angle between consecutive edges around any vertex (None if all degrees < 2)."""
    dirs: dict[int, list[float]] = {v: [] for v in drawing.vertices}
    pts = drawing.vertices
    for u, v in drawing.edges:
        dx, dy = pts[v][0] - pts[u][0], pts[v][1] - pts[u][1]
        dirs[u].append(math.atan2(dy, dx))
        dirs[v].append(math.atan2(-dy, -dx))
    best = None
    for angles in dirs.values():
        if len(angles) < 2:
            continue
        angles.sort()
        gaps = [b - a for a, b in zip(angles, angles[1:])]
        gaps.append(angles[0] + TWO_PI - angles[-1])
        g = min(gaps)
        best = g if best is None else min(best, g)
    return best


@dataclass
class CheckResult:
    status: str
    worst: float | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "worst": self.worst, "detail": self.detail}


@dataclass
class VerifyReport:
    resolution: float | None
    mode: str
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def asserted(self) -> tuple[str, ...]:
        if self.mode == "unsafe":
            return ("central_symmetry", "interior_convexity", "rotation_order")
        return CHECKS

    @property
    def passed(self) -> bool:
        return all(self.checks[c].status == PASS for c in self.asserted)

    def failures(self) -> list[str]:
        return [c for c in self.asserted if self.checks[c].status != PASS]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "resolution": self.resolution,
            "checks": {k: v.to_dict() for k, v in self.checks.items()},
        }


def _vec(pts, u, v):
    return (pts[v][0] - pts[u][0], pts[v][1] - pts[u][1])


def _half_edge_vec(ref: Embedding, pts, h):
    return _vec(pts, ref.tail[h], ref.head[h])


def _dir(vec):
    return math.atan2(vec[1], vec[0])


def _check_symmetry(ref: Embedding, pts, eps) -> CheckResult:
    n = len(ref.drawing.edges)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    worst = 0.0
    where = ""
    for f in ref.interior_faces():
        walk = ref.faces[f]
        if len(walk) % 2:
            return CheckResult(FAIL, None, f"face {f} has odd length")
        m = len(walk) // 2
        for i in range(m):
            a = _half_edge_vec(ref, pts, walk[i])
            b = _half_edge_vec(ref, pts, walk[i + m])
            defect = math.hypot(a[0] + b[0], a[1] + b[1])
            if defect > worst:
                worst, where = defect, f"face {f}"
            ra, rb = find(walk[i] >> 1), find(walk[i + m] >> 1)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    # All members of a zone must share one vector up to sign.
    rep: dict[int, tuple[float, float]] = {}
    for e, (u, v) in enumerate(ref.drawing.edges):
        r = find(e)
        vec = _vec(pts, u, v)
        if r not in rep:
            rep[r] = vec
            continue
        a = rep[r]
        defect = min(math.hypot(vec[0] - a[0], vec[1] - a[1]), math.hypot(vec[0] + a[0], vec[1] + a[1]))
        if defect > worst:
            worst, where = defect, f"zone of edge {(u, v)}"
    return CheckResult(PASS if worst <= eps else FAIL, worst, where)


def _corner_angle(ref: Embedding, pts, h, g) -> float:
    a = _dir(_half_edge_vec(ref, pts, h))
    b = _dir(_half_edge_vec(ref, pts, g))
    return angle_0_2pi(a + math.pi - b)


def _check_convexity(ref: Embedding, pts, eps) -> CheckResult:
    worst = 0.0
    where = ""
    for f in ref.interior_faces():
        walk = ref.faces[f]
        for i, h in enumerate(walk):
            alpha = _corner_angle(ref, pts, h, walk[(i + 1) % len(walk)])
            if alpha > worst:
                worst, where = alpha, f"face {f} at vertex {ref.head[h]}"
    return CheckResult(PASS if worst <= math.pi + eps else FAIL, worst, where)


def _check_winding(ref: Embedding, pts, eps) -> CheckResult:
    outer = ref.faces[ref.outer]
    # Turning at each outer-face corner, walked in reverse (drawing on the left).
    turns = [
        _corner_angle(ref, pts, outer[i - 1], outer[i]) - math.pi for i in range(len(outer))
    ][::-1]
    p = np.concatenate([[0.0], np.cumsum(turns)])
    total = p[-1]
    if abs(total - TWO_PI) > 10 * eps:
        return CheckResult(FAIL, float(total), "boundary turning does not sum to 2*pi")
    q = p[:-1]
    w = q[None, :] - q[:, None]
    idx = np.arange(len(q))
    w[idx[None, :] < idx[:, None]] += total
    np.fill_diagonal(w, 0.0)
    lo, hi = float(w.min()), float(w.max())
    excess = max(hi - 3 * math.pi, -math.pi - lo)
    return CheckResult(PASS if excess <= eps else FAIL, excess, f"winding range [{lo:.9g}, {hi:.9g}]")


def _cyclic(seq):
    if not seq:
        return tuple(seq)
    i = seq.index(min(seq))
    return tuple(seq[i:] + seq[:i])


def _ccw_neighbours(drawing: Drawing, v, nbrs):
    x, y = drawing.vertices[v]
    return sorted(nbrs, key=lambda w: math.atan2(drawing.vertices[w][1] - y, drawing.vertices[w][0] - x))


def _check_rotation(ref: Embedding, drawing: Drawing) -> CheckResult:
    bad = []
    for v, hs in ref.rotation.items():
        expected = [ref.head[h] for h in hs]
        got = _ccw_neighbours(drawing, v, expected)
        if _cyclic(expected) != _cyclic(got):
            bad.append(v)
    if bad:
        return CheckResult(FAIL, float(len(bad)), f"rotation order changed at vertices {bad[:10]}")
    return CheckResult(PASS, 0.0, "")


def _check_planarity(drawing: Drawing, eps) -> CheckResult:
    index = {v: i for i, v in enumerate(drawing.vertices)}
    coords = np.array(list(drawing.vertices.values()), dtype=float)
    segs = np.array([(index[u], index[v]) for u, v in drawing.edges], dtype=np.int64)
    bad = find_crossings(coords, segs, eps)
    if bad:
        i, j = bad[0]
        return CheckResult(FAIL, float(len(bad)), f"{len(bad)} conflicting pairs, e.g. {drawing.edges[i]} x {drawing.edges[j]}")
    return CheckResult(PASS, 0.0, "")


def check_drawing(
    drawing: Drawing, mode: str = "safe", reference: Embedding | None = None, eps: float = EPS_GEOM
) -> VerifyReport:
    """Validity report for ``drawing``; ``reference`` supplies faces and rotation order."""
    report = VerifyReport(measure_resolution(drawing), mode)
    report.checks["planarity"] = _check_planarity(drawing, eps)
    if reference is None:
        if not is_connected(drawing):
            for name in CHECKS:
                if name != "planarity":
                    report.checks[name] = CheckResult(FAIL, None, "drawing is disconnected; no embedding")
            return report
        reference = trace_faces(drawing)
    pts = drawing.vertices
    report.checks["central_symmetry"] = _check_symmetry(reference, pts, eps)
    report.checks["interior_convexity"] = _check_convexity(reference, pts, eps)
    if mode == "unsafe":
        report.checks["winding_range"] = CheckResult(SKIPPED, None, "unsafe mode")
    else:
        report.checks["winding_range"] = _check_winding(reference, pts, eps)
    report.checks["rotation_order"] = _check_rotation(reference, drawing)
    report.checks = {k: report.checks[k] for k in CHECKS}
    return report


def _fw_has_negative_cycle(n: int, tail, head, w, thresh: float) -> bool:
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for t, h, x in zip(tail, head, w):
        if x < dist[t, h]:
            dist[t, h] = x
    for k in range(n):
        dist = np.minimum(dist, dist[:, k, None] + dist[None, k, :])
        if (np.diag(dist) < -thresh).any():
            return True
    return bool((np.diag(dist) < -thresh).any())


def oracle_lambda(a: AuxGraph, tol: float = 1e-11, thresh: float = 1e-12) -> float:
    """Largest feasible resolution by bisection over an all-pairs feasibility test."""
    if a.n_vertices > 13:
        raise ValueError("oracle is meant for at most 12 zones")
    tail, head = a.tail.tolist(), a.head.tolist()

    def feasible(lam):
        w = (a.b - a.m * lam).tolist()
        return not _fw_has_negative_cycle(a.n_vertices, tail, head, w, thresh)

    lo, hi = 0.0, TWO_PI
    if not feasible(lo):
        raise ValueError("auxiliary graph is infeasible at lambda = 0")
    if feasible(hi):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo
