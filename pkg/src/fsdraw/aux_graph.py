"""Auxiliary parametric constraint graph over zones.

Each edge ``u -> v`` carries a weight ``b - m * lam`` and encodes the
difference constraint ``d[v] <= d[u] + b - m * lam`` on zone rotations ``d``.
Zone vertices are numbered ``0 .. t-1``; the source is vertex ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import INTERIOR, BoundaryWalk, Corner

RESOLUTION, CONVEXITY, WINDING_UPPER, WINDING_LOWER, SOURCE = range(5)
TAG_NAMES = ("resolution-corner", "interior-convexity", "winding-upper", "winding-lower", "source")
WINDING_TAGS = (WINDING_UPPER, WINDING_LOWER)

SAFE = "safe"
UNSAFE = "unsafe"


@dataclass(frozen=True)
class AuxEdge:
    tail: int
    head: int
    b: float
    m: int
    tag: int

    @property
    def tag_name(self) -> str:
        return TAG_NAMES[self.tag]


def edge_weight(e: AuxEdge, lam: float) -> float:
    return e.b - e.m * lam


@dataclass(frozen=True, eq=False)
class AuxGraph:
    n_zones: int
    tail: np.ndarray
    head: np.ndarray
    b: np.ndarray
    m: np.ndarray
    tag: np.ndarray
    mode: str = SAFE

    @property
    def source(self) -> int:
        return self.n_zones

    @property
    def n_vertices(self) -> int:
        return self.n_zones + 1

    def __len__(self) -> int:
        return len(self.tail)

    def weights(self, lam: float) -> np.ndarray:
        return self.b - self.m * lam

    def edges(self) -> list[AuxEdge]:
        return [
            AuxEdge(int(t), int(h), float(b), int(m), int(g))
            for t, h, b, m, g in zip(self.tail, self.head, self.b, self.m, self.tag)
        ]

    def resolution_floor(self) -> float:
        """Smallest resolution constant; the input drawing is feasible there."""
        sel = self.m == 1
        return float(self.b[sel].min()) if sel.any() else 0.0


def make_aux_graph(n_zones: int, tail, head, b, m, tag, mode: str = SAFE) -> AuxGraph:
    """Assemble a graph with edges sorted by (head, tail, m, b)."""
    tail = np.asarray(tail, dtype=np.int64)
    head = np.asarray(head, dtype=np.int64)
    b = np.asarray(b, dtype=float)
    m = np.asarray(m, dtype=np.int64)
    tag = np.asarray(tag, dtype=np.int64)
    order = np.lexsort((b, m, tail, head))
    return AuxGraph(n_zones, tail[order], head[order], b[order], m[order], tag[order], mode)


def dedup(a: AuxGraph) -> AuxGraph:
    """Keep only the smallest constant among edges sharing (tail, head, m)."""
    # make_aux_graph sorts by b within each key, so the first of each run wins.
    key = np.stack([a.head, a.tail, a.m], axis=1)
    if len(key) == 0:
        return a
    first = np.ones(len(key), dtype=bool)
    first[1:] = (key[1:] != key[:-1]).any(axis=1)
    return AuxGraph(a.n_zones, a.tail[first], a.head[first], a.b[first], a.m[first], a.tag[first], a.mode)


def build_aux_graph(
    corners: Sequence[Corner],
    boundary: BoundaryWalk,
    mode: str = SAFE,
    n_zones: int | None = None,
    deduplicate: bool = True,
) -> AuxGraph:
    if mode not in (SAFE, UNSAFE):
        raise ValueError(f"unknown mode {mode!r}")
    if n_zones is None:
        n_zones = 1 + max(max(c.zone_in, c.zone_out) for c in corners)

    tails: list[np.ndarray] = []
    heads: list[np.ndarray] = []
    bs: list[np.ndarray] = []
    ms: list[np.ndarray] = []
    tags: list[np.ndarray] = []

    def add(t, h, b, m, tag):
        t = np.asarray(t, dtype=np.int64)
        tails.append(t)
        heads.append(np.asarray(h, dtype=np.int64))
        bs.append(np.asarray(b, dtype=float))
        ms.append(np.full(len(t), m, dtype=np.int64))
        tags.append(np.full(len(t), tag, dtype=np.int64))

    # Corner angle after rotation is angle + d[in] - d[out]; keep it >= lam.
    add([c.zone_in for c in corners], [c.zone_out for c in corners], [c.angle for c in corners], 1, RESOLUTION)
    # Interior corners stay <= pi.
    inner = [c for c in corners if c.kind == INTERIOR]
    add([c.zone_out for c in inner], [c.zone_in for c in inner], [math.pi - c.angle for c in inner], 0, CONVEXITY)

    if mode == SAFE and len(boundary) > 1:
        w = boundary.winding_matrix()
        z = np.asarray(boundary.zones, dtype=np.int64)
        k, l = np.nonzero(~np.eye(len(z), dtype=bool))
        wk = w[k, l]
        add(z[k], z[l], 3 * math.pi - wk, 0, WINDING_UPPER)
        add(z[l], z[k], math.pi + wk, 0, WINDING_LOWER)

    add(np.full(n_zones, n_zones), np.arange(n_zones), np.zeros(n_zones), 0, SOURCE)
    a = make_aux_graph(
        n_zones, np.concatenate(tails), np.concatenate(heads), np.concatenate(bs),
        np.concatenate(ms), np.concatenate(tags), mode,
    )
    return dedup(a) if deduplicate else a


def relabel(a: AuxGraph, perm: Sequence[int]) -> AuxGraph:
    """Rename zone vertices by ``perm`` (the source keeps its index)."""
    full = np.append(np.asarray(perm, dtype=np.int64), a.n_zones)
    return make_aux_graph(a.n_zones, full[a.tail], full[a.head], a.b, a.m, a.tag, a.mode)


def dump(a: AuxGraph) -> str:
    """One line per edge: ``tail head b m tag`` with the source written as ``s``."""
    lines = []
    for e in a.edges():
        t = "s" if e.tail == a.source else str(e.tail)
        h = "s" if e.head == a.source else str(e.head)
        lines.append(f"{t} {h} {e.b:.12g} {e.m} {e.tag_name}")
    return "\n".join(lines) + "\n"
