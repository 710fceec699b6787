"""Largest feasible resolution of an auxiliary graph and its zone rotations.

``bellman_ford`` is the feasibility oracle: at a fixed resolution it either
returns shortest-path distances from the source or a negative cycle.  Two
searches sit on top of it: plain bisection, and a minimum-ratio iteration that
jumps straight to the ratio of each negative cycle it finds.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .aux_graph import AuxGraph

log = logging.getLogger(__name__)

EPS_FEAS = 1e-9  # certificate tolerance
EPS_RELAX = 1e-12  # smallest improvement counted during relaxation
LAMBDA_MAX = 2.0 * math.pi

BISECT = "bisect"
EXACT = "exact"


class InfeasibleInput(ValueError):
    """The input drawing violates its own constraints."""


class CertificateError(RuntimeError):
    pass


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]  # v0 -> v1 -> ... -> v0
    edges: tuple[int, ...]  # aux-edge indices along the cycle
    sum_b: float
    sum_m: int

    @property
    def ratio(self) -> float | None:
        return self.sum_b / self.sum_m if self.sum_m > 0 else None

    def weight(self, lam: float) -> float:
        return self.sum_b - lam * self.sum_m


@dataclass(frozen=True)
class Solution:
    lambda_star: float
    d: np.ndarray  # rotation per zone vertex; the source sits at 0
    solver: str
    iterations: int
    feasible_at: float
    infeasible_at: float | None


def _witness(a: AuxGraph, pred: np.ndarray, starts) -> CycleWitness | None:
    n = a.n_vertices
    stamp = [0] * n
    tail = a.tail
    for run, v0 in enumerate(starts, start=1):
        v = int(v0)
        while v >= 0 and stamp[v] == 0:
            stamp[v] = run
            e = pred[v]
            v = int(tail[e]) if e >= 0 else -1
        if v >= 0 and stamp[v] == run:
            edges = []
            u = v
            while True:
                e = int(pred[u])
                edges.append(e)
                u = int(tail[e])
                if u == v:
                    break
            edges.reverse()
            verts = tuple(int(tail[e]) for e in edges)
            return CycleWitness(
                verts, tuple(edges), float(math.fsum(a.b[edges])), int(a.m[edges].sum())
            )
    return None


def bellman_ford(
    a: AuxGraph, lam: float, eps: float = EPS_RELAX, init: np.ndarray | None = None
) -> np.ndarray | CycleWitness:
    """Distances from the source at resolution ``lam``, or a negative cycle.

    Relaxation is round-synchronous over the edge arrays.  Only improvements
    larger than ``eps`` count.  A cycle in the predecessor graph is always a
    negative cycle, so it is checked every round and reported as soon as it
    appears; otherwise ``n`` rounds without convergence also imply one.

    ``init`` may hold distances from a feasible run at a smaller ``lam``; they
    are upper bounds here and speed up convergence.
    """
    n = a.n_vertices
    w = a.weights(lam)
    tail, head = a.tail, a.head
    d = np.full(n, np.inf)
    d[a.source] = 0.0
    if init is not None:
        d[: a.n_zones] = init[: a.n_zones]
    pred = np.full(n, -1, dtype=np.int64)
    # Edges are sorted by head; every zone vertex has at least its source edge.
    starts = np.flatnonzero(np.r_[True, head[1:] != head[:-1]])
    heads_present = head[starts]

    for _ in range(n):
        cand = d[tail] + w
        best = np.full(n, np.inf)
        best[heads_present] = np.minimum.reduceat(cand, starts)
        improved = best < d - eps
        if not improved.any():
            return d
        hit = np.flatnonzero(improved[head] & (cand == best[head]))
        pred[head[hit]] = hit
        d = np.where(improved, best, d)
        cyc = _witness(a, pred, np.flatnonzero(improved)[::-1])
        if cyc is not None:
            return cyc
    cyc = _witness(a, pred, range(n))
    if cyc is None:  # pragma: no cover - guarded by the round count argument
        raise RuntimeError("relaxation did not converge but no cycle was found")
    return cyc


def solve_bisect(
    a: AuxGraph,
    tol: float = 1e-9,
    max_iter: int = 64,
    lo: float | None = None,
    hi: float = LAMBDA_MAX,
    eps: float = EPS_RELAX,
) -> Solution:
    """Bisection on the resolution with Bellman-Ford as the feasibility test.

    ``lo`` defaults to the smallest corner angle of the input, where the
    unrotated input drawing is itself a feasible assignment.
    """
    if lo is None:
        lo = a.resolution_floor()
    res = bellman_ford(a, lo, eps)
    if isinstance(res, CycleWitness):
        raise InfeasibleInput(f"input drawing violates its own constraints (negative cycle at lambda={lo:.12g})")
    d = res
    it = 0
    top = bellman_ford(a, hi, eps, init=d)
    if not isinstance(top, CycleWitness):
        return Solution(hi, top[: a.n_zones].copy(), BISECT, 1, hi, None)
    while hi - lo > tol and it < max_iter:
        it += 1
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        res = bellman_ford(a, mid, eps, init=d)
        if isinstance(res, CycleWitness):
            hi = mid
        else:
            lo, d = mid, res
        log.debug("bisect %d: [%.12g, %.12g]", it, lo, hi)
    return Solution(lo, d[: a.n_zones].copy(), BISECT, it, lo, lo + max(10 * tol, 1e-6))


def solve_exact(a: AuxGraph, eps: float = EPS_RELAX, max_iter: int = 100_000) -> Solution:
    """Minimum cycle ratio by repeated negative-cycle extraction.

    Start above every possible ratio; whenever a negative cycle shows up, drop
    the resolution to that cycle's ratio (a strict decrease).  The first
    resolution with no negative cycle is the minimum ratio over all cycles.
    """
    lam = LAMBDA_MAX
    for it in range(1, max_iter + 1):
        res = bellman_ford(a, lam, eps)
        if not isinstance(res, CycleWitness):
            return Solution(lam, res[: a.n_zones].copy(), EXACT, it, lam, lam + 1e-6)
        if res.sum_m == 0:
            raise InfeasibleInput("input drawing violates its own constraints (negative cycle without resolution edges)")
        lam = res.sum_b / res.sum_m
        log.debug("exact %d: cycle %s ratio %.15g", it, res.vertices, lam)
    raise RuntimeError("minimum-ratio iteration did not terminate")


@dataclass(frozen=True)
class Certificate:
    bounds_ok: bool
    worst_violation: float
    worst_edge: int | None
    maximal_ok: bool
    probe_lambda: float
    witness: CycleWitness | None

    @property
    def ok(self) -> bool:
        return self.bounds_ok and self.maximal_ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "bounds_ok": self.bounds_ok,
            "worst_violation": self.worst_violation,
            "maximal_ok": self.maximal_ok,
            "probe_lambda": self.probe_lambda,
            "witness": None if self.witness is None else list(self.witness.vertices),
        }


def certify(a: AuxGraph, sol: Solution, tol: float = 1e-9, eps: float = EPS_FEAS) -> Certificate:
    """Check the shortest-path inequalities at the solution and that a slightly
    larger resolution is infeasible."""
    full = np.append(np.asarray(sol.d, dtype=float), 0.0)
    slack = full[a.head] - full[a.tail] - a.weights(sol.lambda_star)
    worst_edge = int(np.argmax(slack)) if len(slack) else None
    worst = float(slack[worst_edge]) if worst_edge is not None else 0.0
    probe = sol.lambda_star + max(10 * tol, 1e-6)
    res = bellman_ford(a, probe)
    witness = res if isinstance(res, CycleWitness) else None
    return Certificate(worst <= eps, worst, worst_edge, witness is not None, probe, witness)
