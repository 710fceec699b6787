"""Angle normalization and segment-intersection helpers shared by ingest and verify."""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

# Default tolerance for parallelism, equal lengths and angle sums.
EPS_GEOM = 1e-7

# Angles closer than this to a multiple of 2*pi are snapped (cusps, straight reversals).
_SNAP = 1e-12


def angle_0_2pi(x: float) -> float:
    """Normalize to (0, 2*pi]; an exact reversal (cusp) maps to 2*pi."""
    a = math.fmod(x, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a <= _SNAP or a >= TWO_PI - _SNAP:
        return TWO_PI
    return a


def angle_mod_pi(x: float) -> float:
    """Normalize to [0, pi)."""
    a = math.fmod(x, math.pi)
    if a < 0.0:
        a += math.pi
    if a >= math.pi - _SNAP:
        a = 0.0
    return a


def angle_diff(x: float) -> float:
    """Normalize to (-pi, pi]."""
    a = math.fmod(x + math.pi, TWO_PI)
    if a <= 0.0:
        a += TWO_PI
    return a - math.pi


def direction(p: tuple[float, float], q: tuple[float, float]) -> float:
    return math.atan2(q[1] - p[1], q[0] - p[0])


def _point_segment_dist(p, a, b):
    ab = b - a
    ap = p - a
    denom = np.einsum("ij,ij->i", ab, ab)
    t = np.einsum("ij,ij->i", ap, ab) / np.where(denom > 0, denom, 1.0)
    t = np.clip(t, 0.0, 1.0)
    closest = a + t[:, None] * ab
    return np.hypot(*(p - closest).T)


def _cross(o, a, b):
    return (a[:, 0] - o[:, 0]) * (b[:, 1] - o[:, 1]) - (a[:, 1] - o[:, 1]) * (b[:, 0] - o[:, 0])


def _pair_conflicts(coords, segs, i, j, eps):
    """Boolean mask over candidate pairs (i[k], j[k]) that touch or overlap illegally."""
    si, sj = segs[i], segs[j]
    a1, a2 = coords[si[:, 0]], coords[si[:, 1]]
    b1, b2 = coords[sj[:, 0]], coords[sj[:, 1]]
    share = (
        (si[:, 0] == sj[:, 0]) | (si[:, 0] == sj[:, 1]) | (si[:, 1] == sj[:, 0]) | (si[:, 1] == sj[:, 1])
    )
    out = np.zeros(len(i), dtype=bool)

    # Disjoint-endpoint pairs: conflict when the segments come within eps.
    k = ~share
    if k.any():
        p1, p2, q1, q2 = a1[k], a2[k], b1[k], b2[k]
        o1, o2 = _cross(p1, p2, q1), _cross(p1, p2, q2)
        o3, o4 = _cross(q1, q2, p1), _cross(q1, q2, p2)
        proper = (o1 * o2 < 0) & (o3 * o4 < 0)
        dist = np.minimum.reduce(
            [
                _point_segment_dist(q1, p1, p2),
                _point_segment_dist(q2, p1, p2),
                _point_segment_dist(p1, q1, q2),
                _point_segment_dist(p2, q1, q2),
            ]
        )
        out[k] = proper | (dist <= eps)

    # Pairs sharing a vertex: conflict only when they leave it in the same direction.
    k = share
    if k.any():
        si_k, sj_k = si[k], sj[k]
        shared = np.where(
            (si_k[:, 0] == sj_k[:, 0]) | (si_k[:, 0] == sj_k[:, 1]), si_k[:, 0], si_k[:, 1]
        )
        other_i = np.where(si_k[:, 0] == shared, si_k[:, 1], si_k[:, 0])
        other_j = np.where(sj_k[:, 0] == shared, sj_k[:, 1], sj_k[:, 0])
        c = coords[shared]
        u = coords[other_i] - c
        w = coords[other_j] - c
        cr = u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]
        dot = np.einsum("ij,ij->i", u, w)
        norm = np.hypot(*u.T) * np.hypot(*w.T)
        out[k] = (np.abs(cr) <= eps * norm) & (dot > 0)
    return out


def find_crossings(coords, segs, eps: float = EPS_GEOM, limit: int | None = None) -> list[tuple[int, int]]:
    """Return index pairs of segments that cross, touch, or overlap.

    Segments sharing an endpoint are only reported when they overlap along a
    common direction.  Candidate pairs come from an x-sorted sweep filtered by
    bounding boxes, so the cost is roughly linear for well-spread drawings.
    """
    coords = np.asarray(coords, dtype=float)
    segs = np.asarray(segs, dtype=np.int64).reshape(-1, 2)
    n = len(segs)
    if n < 2:
        return []
    p, q = coords[segs[:, 0]], coords[segs[:, 1]]
    lo = np.minimum(p, q) - eps
    hi = np.maximum(p, q) + eps
    order = np.argsort(lo[:, 0], kind="stable")
    xs = lo[order, 0]
    found: list[tuple[int, int]] = []
    buf_i: list[np.ndarray] = []
    buf_j: list[np.ndarray] = []
    pending = 0

    def flush():
        nonlocal pending
        if not buf_i:
            return
        ci, cj = np.concatenate(buf_i), np.concatenate(buf_j)
        buf_i.clear()
        buf_j.clear()
        pending = 0
        bad = _pair_conflicts(coords, segs, ci, cj, eps)
        for a, b in zip(ci[bad], cj[bad]):
            found.append((int(min(a, b)), int(max(a, b))))

    for pos in range(n):
        s = order[pos]
        end = np.searchsorted(xs, hi[s, 0], side="right")
        if end <= pos + 1:
            continue
        cand = order[pos + 1 : end]
        keep = (lo[cand, 1] <= hi[s, 1]) & (hi[cand, 1] >= lo[s, 1])
        cand = cand[keep]
        if len(cand):
            buf_i.append(np.full(len(cand), s))
            buf_j.append(cand)
            pending += len(cand)
        if pending > 200_000:
            flush()
            if limit is not None and len(found) >= limit:
                break
    flush()
    found.sort()
    return found if limit is None else found[:limit]
