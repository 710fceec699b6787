"""Drawing ingest: parsing, planar embedding, zones, corners and the boundary walk.

Half-edges are numbered ``2*e`` for edge ``e`` traversed as listed in the
document and ``2*e + 1`` for the reverse traversal.  Every face walk keeps its
own region on the left, so interior faces run counterclockwise and the outer
face runs clockwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .geometry import EPS_GEOM, TWO_PI, angle_0_2pi, angle_diff, angle_mod_pi, find_crossings

INTERIOR = "interior"
OUTER = "outer"


class DrawingError(ValueError):
    """Raised for malformed or non-face-symmetric input drawings."""


@dataclass(frozen=True, eq=False)
class Drawing:
    vertices: dict[int, tuple[float, float]]
    edges: tuple[tuple[int, int], ...]
    zones_hint: tuple[frozenset[int], ...] | None = None

    def coords(self, u: int) -> tuple[float, float]:
        return self.vertices[u]

    def with_coords(self, coords: dict[int, tuple[float, float]]) -> "Drawing":
        return Drawing({v: coords[v] for v in self.vertices}, self.edges, None)


def _fmt(x: float) -> float:
    x = float(format(float(x), ".12g"))
    return 0.0 if x == 0 else x


def drawing_to_dict(d: Drawing, zones: Iterable[Iterable[int]] | None = None) -> dict:
    doc = {
        "vertices": [{"id": v, "x": _fmt(x), "y": _fmt(y)} for v, (x, y) in d.vertices.items()],
        "edges": [[u, v] for u, v in d.edges],
    }
    if zones is not None:
        doc["zones"] = [sorted(z) for z in zones]
    return doc


def dumps_compact(obj, indent: int = 0) -> str:
    """JSON with dict keys and list records on their own lines; scalar lists stay inline."""
    pad = " " * (indent + 1)
    if isinstance(obj, dict) and obj:
        body = ",\n".join(f"{pad}{json.dumps(k)}: {dumps_compact(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + " " * indent + "}"
    if isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        body = ",\n".join(pad + json.dumps(x) for x in obj)
        return "[\n" + body + "\n" + " " * indent + "]"
    return json.dumps(obj)


def to_document(d: Drawing, zones: Iterable[Iterable[int]] | None = None) -> str:
    return dumps_compact(drawing_to_dict(d, zones)) + "\n"


def drawing_from_dict(doc) -> Drawing:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise DrawingError("malformed document: expected 'vertices' and 'edges'")
    vertices: dict[int, tuple[float, float]] = {}
    try:
        for rec in doc["vertices"]:
            vid = int(rec["id"])
            if vid in vertices:
                raise DrawingError(f"duplicate vertex id {vid}")
            x, y = float(rec["x"]), float(rec["y"])
            if not (math.isfinite(x) and math.isfinite(y)):
                raise DrawingError(f"non-finite coordinate on vertex {vid}")
            vertices[vid] = (x, y)
        edges = []
        for rec in doc["edges"]:
            u, v = (int(t) for t in rec)
            edges.append((u, v))
    except DrawingError:
        raise
    except (TypeError, KeyError, ValueError) as exc:
        raise DrawingError(f"malformed document: {exc}") from exc

    if len(edges) < 1:
        raise DrawingError("drawing needs at least one edge")
    seen = set()
    used = set()
    for u, v in edges:
        for w in (u, v):
            if w not in vertices:
                raise DrawingError(f"edge ({u}, {v}) references unknown vertex {w}")
        if u == v:
            raise DrawingError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DrawingError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        used.update(key)
    isolated = sorted(set(vertices) - used)
    if isolated:
        raise DrawingError(f"isolated vertices: {isolated}")

    hint = None
    if doc.get("zones") is not None:
        try:
            hint = tuple(frozenset(int(e) for e in z) for z in doc["zones"])
        except (TypeError, ValueError) as exc:
            raise DrawingError(f"malformed zones: {exc}") from exc
    return Drawing(vertices, tuple(edges), hint)


def parse_drawing(text: str) -> Drawing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingError(f"malformed document: {exc}") from exc
    return drawing_from_dict(doc)


# ---------------------------------------------------------------------------
# Embedding


@dataclass(frozen=True, eq=False)
class Embedding:
    drawing: Drawing
    tail: tuple[int, ...]
    head: tuple[int, ...]
    angle: tuple[float, ...]  # raw direction of each half-edge
    length: tuple[float, ...]  # per edge
    rotation: dict[int, tuple[int, ...]]  # ccw outgoing half-edges per vertex
    faces: tuple[tuple[int, ...], ...]
    face_of: tuple[int, ...]
    outer: int
    areas: tuple[float, ...]

    @property
    def n_half_edges(self) -> int:
        return len(self.tail)

    def interior_faces(self) -> list[int]:
        return [f for f in range(len(self.faces)) if f != self.outer]


def trace_faces(drawing: Drawing) -> Embedding:
    """Rotation system and face walks, without any validation."""
    tail, head = [], []
    for u, v in drawing.edges:
        tail += [u, v]
        head += [v, u]
    pts = drawing.vertices
    angle = [math.atan2(pts[h][1] - pts[t][1], pts[h][0] - pts[t][0]) for t, h in zip(tail, head)]
    length = [math.hypot(pts[v][0] - pts[u][0], pts[v][1] - pts[u][1]) for u, v in drawing.edges]

    out: dict[int, list[int]] = {v: [] for v in pts}
    for h, t in enumerate(tail):
        out[t].append(h)
    rotation = {v: tuple(sorted(hs, key=lambda h: (angle[h], h))) for v, hs in out.items()}
    pos = {}
    for v, hs in rotation.items():
        for i, h in enumerate(hs):
            pos[h] = i

    def nxt(h: int) -> int:
        twin = h ^ 1
        ring = rotation[head[h]]
        return ring[pos[twin] - 1]

    face_of = [-1] * len(tail)
    faces = []
    for start in range(len(tail)):
        if face_of[start] >= 0:
            continue
        walk = []
        h = start
        while face_of[h] < 0:
            face_of[h] = len(faces)
            walk.append(h)
            h = nxt(h)
        faces.append(tuple(walk))

    areas = []
    for walk in faces:
        a = 0.0
        for h in walk:
            (x0, y0), (x1, y1) = pts[tail[h]], pts[head[h]]
            a += x0 * y1 - x1 * y0
        areas.append(0.5 * a)
    outer = min(range(len(faces)), key=lambda f: (areas[f], f))
    return Embedding(
        drawing, tuple(tail), tuple(head), tuple(angle), tuple(length), rotation,
        tuple(faces), tuple(face_of), outer, tuple(areas),
    )


def is_connected(drawing: Drawing) -> bool:
    adj: dict[int, list[int]] = {v: [] for v in drawing.vertices}
    for u, v in drawing.edges:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def derive_embedding(drawing: Drawing, eps: float = EPS_GEOM) -> Embedding:
    if not is_connected(drawing):
        raise DrawingError("drawing is disconnected")
    index = {v: i for i, v in enumerate(drawing.vertices)}
    coords = np.array(list(drawing.vertices.values()), dtype=float)
    segs = np.array([(index[u], index[v]) for u, v in drawing.edges], dtype=np.int64)
    lengths = np.hypot(*(coords[segs[:, 1]] - coords[segs[:, 0]]).T)
    if (lengths <= eps).any():
        e = int(np.argmax(lengths <= eps))
        raise DrawingError(f"zero-length edge {drawing.edges[e]}")
    bad = find_crossings(coords, segs, eps, limit=1)
    if bad:
        i, j = bad[0]
        raise DrawingError(f"edges {drawing.edges[i]} and {drawing.edges[j]} cross or overlap")
    emb = trace_faces(drawing)
    v, e, f = len(drawing.vertices), len(drawing.edges), len(emb.faces)
    if v - e + f != 2:
        raise DrawingError(f"Euler check failed: V - E + F = {v - e + f}")
    return emb


# ---------------------------------------------------------------------------
# Zones


@dataclass(frozen=True)
class Zone:
    id: int
    edges: tuple[int, ...]
    theta: float  # canonical direction in [0, pi)
    length: float


@dataclass(frozen=True, eq=False)
class ZoneSet:
    zones: tuple[Zone, ...]
    zone_of: tuple[int, ...]  # per edge
    sign: tuple[int, ...]  # +1 when the edge as listed points along theta

    def __len__(self) -> int:
        return len(self.zones)

    def half_edge_zone(self, h: int) -> int:
        return self.zone_of[h >> 1]

    def half_edge_offset(self, h: int) -> float:
        """0 when the half-edge points along its zone's theta, pi when against it."""
        s = self.sign[h >> 1] * (1 if h % 2 == 0 else -1)
        return 0.0 if s > 0 else math.pi

    def half_edge_direction(self, h: int) -> float:
        return self.zones[self.zone_of[h >> 1]].theta + self.half_edge_offset(h)

    def partition(self) -> list[frozenset[int]]:
        return [frozenset(z.edges) for z in self.zones]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def derive_zones(emb: Embedding, eps: float = EPS_GEOM) -> ZoneSet:
    n_edges = len(emb.drawing.edges)
    uf = _UnionFind(n_edges)
    for f in emb.interior_faces():
        walk = emb.faces[f]
        if len(walk) % 2:
            raise DrawingError(f"interior face {f} has odd length {len(walk)}")
        m = len(walk) // 2
        for i in range(m):
            h, g = walk[i], walk[i + m]
            turn = abs(angle_diff(emb.angle[h] - emb.angle[g] - math.pi))
            dlen = abs(emb.length[h >> 1] - emb.length[g >> 1])
            if turn > eps or dlen > eps:
                raise DrawingError(
                    f"face {f} is not centrally symmetric: edges {emb.drawing.edges[h >> 1]} and "
                    f"{emb.drawing.edges[g >> 1]} are not opposite parallel translates"
                )
            uf.union(h >> 1, g >> 1)

    groups: dict[int, list[int]] = {}
    for e in range(n_edges):
        groups.setdefault(uf.find(e), []).append(e)
    zone_of = [0] * n_edges
    sign = [1] * n_edges
    zones = []
    for zid, members in enumerate(sorted(groups.values(), key=min)):
        canon = members[0]
        raw = emb.angle[2 * canon]
        theta = angle_mod_pi(raw)
        ell = emb.length[canon]
        for e in members:
            dev = angle_diff(emb.angle[2 * e] - theta)
            s = 1 if abs(dev) <= math.pi / 2 else -1
            off = dev if s > 0 else angle_diff(dev - math.pi)
            if abs(off) > eps or abs(emb.length[e] - ell) > eps:
                raise DrawingError(f"zone {zid} members are not parallel and equal length (edge {emb.drawing.edges[e]})")
            zone_of[e] = zid
            sign[e] = s
        zones.append(Zone(zid, tuple(members), theta, ell))
    zs = ZoneSet(tuple(zones), tuple(zone_of), tuple(sign))

    hint = emb.drawing.zones_hint
    if hint is not None and set(hint) != set(zs.partition()):
        raise DrawingError("declared zones do not match the derived zone partition")
    return zs


# ---------------------------------------------------------------------------
# Corners and boundary


@dataclass(frozen=True)
class Corner:
    face: int
    vertex: int
    h_in: int
    h_out: int
    zone_in: int
    zone_out: int
    dir_in: float
    dir_out: float
    angle: float  # in (0, 2*pi], measured inside the face
    kind: str


@dataclass(frozen=True, eq=False)
class BoundaryWalk:
    """Outer boundary traversed with the drawing on the left.

    ``turning[k]`` is the turn from occurrence ``k`` to ``k + 1`` (cyclically).
    """

    occurrences: tuple[int, ...]
    zones: tuple[int, ...]
    turning: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.occurrences)

    @property
    def prefix(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.turning)])

    @property
    def total(self) -> float:
        return float(math.fsum(self.turning))

    def winding(self, k: int, l: int) -> float:
        """Summed turning walking forward from occurrence k to occurrence l."""
        p = self.prefix
        w = p[l] - p[k]
        return float(w if l >= k else w + self.total)

    def winding_matrix(self) -> np.ndarray:
        p = self.prefix[:-1]
        w = p[None, :] - p[:, None]
        idx = np.arange(len(p))
        w[idx[None, :] < idx[:, None]] += self.total
        return w


def corner_angle(dir_in: float, dir_out: float) -> float:
    return angle_0_2pi(dir_in + math.pi - dir_out)


def extract_corners(emb: Embedding, zones: ZoneSet, eps: float = EPS_GEOM) -> tuple[list[Corner], BoundaryWalk]:
    corners = []
    for f, walk in enumerate(emb.faces):
        kind = OUTER if f == emb.outer else INTERIOR
        for i, h in enumerate(walk):
            g = walk[(i + 1) % len(walk)]
            din, dout = zones.half_edge_direction(h), zones.half_edge_direction(g)
            alpha = corner_angle(din, dout)
            if kind == INTERIOR and alpha > math.pi + eps:
                raise DrawingError(f"interior face {f} is not convex at vertex {emb.head[h]}")
            corners.append(
                Corner(f, emb.head[h], h, g, zones.half_edge_zone(h), zones.half_edge_zone(g), din, dout, alpha, kind)
            )

    outer = emb.faces[emb.outer]
    occ = tuple(h ^ 1 for h in reversed(outer))
    # The corner between occ[k] and occ[k+1] is the outer-face corner between
    # the reversed pair; its turning is the outer angle minus pi.
    outer_corner = {c.h_in: c for c in corners if c.kind == OUTER}
    turning = []
    for k in range(len(occ)):
        nxt = occ[(k + 1) % len(occ)]
        c = outer_corner[nxt ^ 1]
        turning.append(c.angle - math.pi)
    walk = BoundaryWalk(occ, tuple(zones.half_edge_zone(h) for h in occ), tuple(turning))
    if abs(walk.total - TWO_PI) > 10 * eps:
        raise DrawingError(f"boundary turning sums to {walk.total:.9f}, expected 2*pi")
    return corners, walk


@dataclass(frozen=True, eq=False)
class Model:
    drawing: Drawing
    embedding: Embedding
    zones: ZoneSet
    corners: tuple[Corner, ...]
    boundary: BoundaryWalk

    @property
    def n_zones(self) -> int:
        return len(self.zones)


def ingest(drawing: Drawing, eps: float = EPS_GEOM) -> Model:
    emb = derive_embedding(drawing, eps)
    zones = derive_zones(emb, eps)
    corners, boundary = extract_corners(emb, zones, eps)
    return Model(drawing, emb, zones, tuple(corners), boundary)


def load_model(text: str, eps: float = EPS_GEOM) -> Model:
    return ingest(parse_drawing(text), eps)
