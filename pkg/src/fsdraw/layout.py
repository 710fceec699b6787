"""Zone-vector placement of an optimized drawing."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import Drawing, DrawingError, ZoneSet

UNIT = "unit"
PRESERVE = "preserve"


@dataclass(frozen=True, eq=False)
class ZoneVectorSet:
    theta: np.ndarray  # output direction per zone
    length: np.ndarray
    rotation: np.ndarray  # theta - input theta

    def vector(self, z: int) -> tuple[float, float]:
        return (self.length[z] * math.cos(self.theta[z]), self.length[z] * math.sin(self.theta[z]))


def load_length_file(path: str | Path) -> dict[int, float]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return {int(k): float(v) for k, v in raw.items()}


def apply_rotations(zones: ZoneSet, d, policy: str | dict[int, float] = UNIT) -> ZoneVectorSet:
    """Rotate each zone by ``d[z]`` and pick lengths.

    ``policy`` is ``"unit"``, ``"preserve"`` (input lengths), ``"file:<path>"``
    or an explicit ``{zone id: length}`` mapping.
    """
    d = np.asarray(d, dtype=float)[: len(zones)]
    theta0 = np.array([z.theta for z in zones.zones])
    if isinstance(policy, str) and policy.startswith("file:"):
        policy = load_length_file(policy[5:])
    if policy == UNIT:
        length = np.ones(len(zones))
    elif policy == PRESERVE:
        length = np.array([z.length for z in zones.zones])
    elif isinstance(policy, dict):
        missing = [z.id for z in zones.zones if z.id not in policy]
        if missing:
            raise DrawingError(f"length map is missing zones {missing}")
        length = np.array([policy[z.id] for z in zones.zones], dtype=float)
        if (length <= 0).any() or not np.isfinite(length).all():
            raise DrawingError("zone lengths must be positive")
    else:
        raise ValueError(f"unknown length policy {policy!r}")
    return ZoneVectorSet(theta0 + d, length, d.copy())


def place_vertices(drawing: Drawing, zones: ZoneSet, zv: ZoneVectorSet, base: int | None = None) -> Drawing:
    """Depth-first placement: each vertex is its parent plus the signed zone vector.

    The result is translated so its bounding box starts at the origin.
    """
    vec = np.stack([zv.length * np.cos(zv.theta), zv.length * np.sin(zv.theta)], axis=1)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in drawing.vertices}
    for e, (u, v) in enumerate(drawing.edges):
        adj[u].append((v, e))
        adj[v].append((u, e))
    if base is None:
        base = min(drawing.vertices)
    pos = {base: np.zeros(2)}
    stack = [base]
    while stack:
        u = stack.pop()
        for w, e in adj[u]:
            if w in pos:
                continue
            s = zones.sign[e] if drawing.edges[e][0] == u else -zones.sign[e]
            pos[w] = pos[u] + s * vec[zones.zone_of[e]]
            stack.append(w)
    if len(pos) != len(drawing.vertices):
        raise DrawingError("drawing is disconnected")
    low = np.min(np.stack(list(pos.values())), axis=0)
    # Rounding at 1e-12 only clears float noise such as cos(pi/2).
    coords = {
        v: (round(float(pos[v][0] - low[0]), 12) + 0.0, round(float(pos[v][1] - low[1]), 12) + 0.0)
        for v in drawing.vertices
    }
    return drawing.with_coords(coords)


def closure_defect(drawing: Drawing, zones: ZoneSet, zv: ZoneVectorSet) -> float:
    """Largest mismatch between an edge and its signed zone vector."""
    worst = 0.0
    for e, (u, v) in enumerate(drawing.edges):
        z = zones.zone_of[e]
        vx, vy = zv.vector(z)
        s = zones.sign[e]
        (x0, y0), (x1, y1) = drawing.vertices[u], drawing.vertices[v]
        worst = max(worst, math.hypot(x1 - x0 - s * vx, y1 - y0 - s * vy))
    return worst
