"""End-to-end optimization of a face-symmetric drawing."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .aux_graph import SAFE, UNSAFE, AuxGraph, build_aux_graph
from .geometry import EPS_GEOM
from .layout import UNIT, apply_rotations, closure_defect, place_vertices
from .model import Drawing, Model, _fmt, drawing_to_dict, ingest
from .solver import BISECT, EXACT, Certificate, Solution, certify, solve_bisect, solve_exact
from .verify import VerifyReport, check_drawing, measure_resolution

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Result:
    model: Model
    aux: AuxGraph
    solution: Solution
    certificate: Certificate
    output: Drawing
    report: VerifyReport
    resolution_in: float | None
    closure: float
    mode: str

    @property
    def lambda_star(self) -> float:
        return self.solution.lambda_star

    @property
    def ok(self) -> bool:
        return self.certificate.ok and (self.mode == UNSAFE or self.report.passed)

    def to_dict(self) -> dict:
        zones = self.model.zones
        return {
            "lambda_star": _fmt(self.lambda_star),
            "mode": self.mode,
            "solver": self.solution.solver,
            "iterations": self.solution.iterations,
            "resolution_in": None if self.resolution_in is None else _fmt(self.resolution_in),
            "resolution_out": None if self.report.resolution is None else _fmt(self.report.resolution),
            "zone_rotations": {str(z.id): _fmt(self.solution.d[z.id]) for z in zones.zones},
            "drawing": drawing_to_dict(self.output, [z.edges for z in zones.zones]),
            "checks": _rounded(
                {
                    "certificate": self.certificate.to_dict(),
                    "closure_defect": self.closure,
                    "verify": self.report.to_dict(),
                }
            ),
        }


def _rounded(obj):
    if isinstance(obj, float):
        return _fmt(obj) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def solve(aux: AuxGraph, solver: str = BISECT, tol: float = 1e-9, max_iter: int = 64) -> Solution:
    if solver == BISECT:
        return solve_bisect(aux, tol=tol, max_iter=max_iter)
    if solver == EXACT:
        return solve_exact(aux)
    raise ValueError(f"unknown solver {solver!r}")


def optimize(
    drawing: Drawing | Model,
    mode: str = SAFE,
    solver: str = BISECT,
    tol: float = 1e-9,
    max_iter: int = 64,
    lengths=UNIT,
    eps: float = EPS_GEOM,
) -> Result:
    model = drawing if isinstance(drawing, Model) else ingest(drawing, eps)
    aux = build_aux_graph(model.corners, model.boundary, mode, n_zones=model.n_zones)
    log.info("%d zones, %d aux edges, mode %s", model.n_zones, len(aux), mode)
    sol = solve(aux, solver, tol, max_iter)
    cert = certify(aux, sol, tol)
    zv = apply_rotations(model.zones, sol.d, lengths)
    out = place_vertices(model.drawing, model.zones, zv)
    report = check_drawing(out, mode, reference=model.embedding, eps=eps)
    return Result(
        model, aux, sol, cert, out, report, measure_resolution(model.drawing),
        closure_defect(out, model.zones, zv), mode,
    )
