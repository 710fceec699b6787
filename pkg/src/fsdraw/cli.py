"""``fsdraw`` command line: optimize, check, render, gen."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from .aux_graph import SAFE, UNSAFE, dump
from .fixtures import GENERATORS, jitter
from .model import DrawingError, _fmt, drawing_from_dict, dumps_compact, ingest, to_document
from .pipeline import _rounded, optimize
from .render import render_svg
from .solver import InfeasibleInput
from .verify import check_drawing

log = logging.getLogger("fsdraw")

EXIT_INPUT, EXIT_CERT, EXIT_VERIFY, EXIT_USAGE = 1, 2, 3, 64
EDGE_WARN = 3000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _setup_logging() -> None:
    level = {"debug": logging.DEBUG, "info": logging.INFO, "quiet": logging.ERROR}.get(
        os.environ.get("FSDRAW_LOG", "info").lower(), logging.INFO
    )
    logging.basicConfig(level=level, format="fsdraw: %(message)s", stream=sys.stderr)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def load_input(path: str):
    """A drawing document, or a result document carrying one under ``drawing``."""
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise DrawingError(f"malformed document: {exc}") from exc
    if isinstance(doc, dict) and "drawing" in doc and "vertices" not in doc:
        doc = doc["drawing"]
    return drawing_from_dict(doc)


def _angle(x: float, degrees: bool) -> str:
    return f"{math.degrees(x):.6f} deg" if degrees else f"{x:.9f} rad"


def cmd_optimize(args) -> int:
    drawing = load_input(args.input)
    if len(drawing.edges) > EDGE_WARN:
        log.warning("%d edges: the brute-force planarity checks may be slow", len(drawing.edges))
    model = ingest(drawing)
    mode = UNSAFE if args.unsafe else SAFE
    kw = dict(solver=args.solver, tol=args.tol, max_iter=args.max_iter, lengths=args.lengths)
    result = optimize(model, mode=mode, **kw)
    if args.dump_aux:
        _write(args.dump_aux, dump(result.aux))
    doc = result.to_dict()
    if args.compare:
        other = optimize(model, mode=SAFE if args.unsafe else UNSAFE, **kw)
        safe, unsafe = (other, result) if args.unsafe else (result, other)
        doc["lambda_star_safe"] = _fmt(safe.lambda_star)
        doc["lambda_star_unsafe"] = _fmt(unsafe.lambda_star)
    log.info(
        "lambda* = %s (%s, %s); resolution %s -> %s",
        _angle(result.lambda_star, args.degrees), mode, args.solver,
        _angle(result.resolution_in or 0.0, args.degrees), _angle(result.report.resolution or 0.0, args.degrees),
    )
    _write(args.output, dumps_compact(doc) + "\n")
    if args.svg:
        theta = {z.id: z.theta + result.solution.d[z.id] for z in model.zones.zones}
        _write(args.svg, render_svg(result.output, model.zones.zone_of if args.color_zones else None, theta))
    if not result.certificate.ok:
        log.error("certificate failed: %s", json.dumps(_rounded(result.certificate.to_dict())))
        return EXIT_CERT
    if mode == SAFE and not result.report.passed:
        log.error("verification failed: %s", ", ".join(result.report.failures()))
        return EXIT_VERIFY
    return 0


def cmd_check(args) -> int:
    drawing = load_input(args.input)
    reference = None
    if args.reference:
        reference = ingest(load_input(args.reference)).embedding
    report = check_drawing(drawing, UNSAFE if args.unsafe else SAFE, reference)
    _write(args.output, dumps_compact(_rounded(report.to_dict())) + "\n")
    return 0 if report.passed else EXIT_VERIFY


def cmd_render(args) -> int:
    drawing = load_input(args.input)
    zone_of = theta = None
    if args.color_zones:
        model = ingest(drawing)
        zone_of = model.zones.zone_of
        theta = {z.id: z.theta for z in model.zones.zones}
    _write(args.output, render_svg(drawing, zone_of, theta))
    return 0


def cmd_gen(args) -> int:
    gen = GENERATORS[args.kind]
    if args.kind == "grid":
        if args.m is None or args.n is None:
            raise _UsageError("gen grid needs --m and --n")
        d = gen(args.m, args.n, skew=args.skew)
    else:
        if args.k is None:
            raise _UsageError(f"gen {args.kind} needs --k")
        d = gen(args.k, skew=args.skew)
    if args.jitter:
        d = jitter(d, args.jitter, args.seed)
    _write(args.output, to_document(d))
    return 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fsdraw", description="Optimal angular resolution for face-symmetric drawings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    o = sub.add_parser("optimize", help="recompute zone directions for maximum angular resolution")
    o.add_argument("input", help="drawing document ('-' for stdin)")
    o.add_argument("-o", "--output", help="result JSON path (default stdout)")
    o.add_argument("--svg", help="also write the optimized drawing as SVG")
    o.add_argument("--solver", choices=("bisect", "exact"), default="bisect")
    o.add_argument("--unsafe", action="store_true", help="drop the boundary winding constraints")
    o.add_argument("--compare", action="store_true", help="report both safe and unsafe optima")
    o.add_argument("--tol", type=float, default=1e-9)
    o.add_argument("--max-iter", type=int, default=64)
    o.add_argument("--lengths", default="unit", help="unit | preserve | file:<path>")
    o.add_argument("--dump-aux", metavar="PATH", help="write the auxiliary graph edge list ('-' for stdout)")
    o.add_argument("--degrees", action="store_true", help="log angles in degrees")
    o.add_argument("--color-zones", action="store_true")
    o.set_defaults(func=cmd_optimize)

    c = sub.add_parser("check", help="verify a drawing and report its angular resolution")
    c.add_argument("input")
    c.add_argument("--reference", help="drawing whose embedding the input must preserve")
    c.add_argument("--unsafe", action="store_true")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("render", help="draw a drawing or result document as SVG")
    r.add_argument("input")
    r.add_argument("-o", "--output")
    r.add_argument("--color-zones", action="store_true")
    r.set_defaults(func=cmd_render)

    g = sub.add_parser("gen", help="emit a fixture drawing")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--skew", type=float, default=0.0, help="shear angle in radians")
    g.add_argument("--jitter", type=float, default=0.0, help="random per-zone rotation bound (radians)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "lengths", "unit") not in ("unit", "preserve") and not args.lengths.startswith("file:"):
        parser.error(f"bad --lengths value {args.lengths!r}")
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except (DrawingError, InfeasibleInput, ValueError, OSError) as exc:
        print(f"fsdraw: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
