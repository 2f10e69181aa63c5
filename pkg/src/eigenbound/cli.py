"""Command-line interface.

Subcommands print JSON on stdout.  Exit codes: 0 success, 1 evaluation error
(a JSON object with ``error`` and ``message`` goes to stderr), 2 at least one
inequality violated, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import EigenboundError
from .types import (
    Box,
    CurvatureSummary,
    EuclideanBall,
    MeshGeometry,
    Operator,
    SobolevConfig,
    SphericalCap,
    Spectrum,
    dumps,
    validate_spectrum,
)

EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D401
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_geometry(p: argparse.ArgumentParser) -> None:
    p.add_argument("geometry", choices=["box", "ball", "cap", "mesh"])
    p.add_argument("--lengths", type=float, nargs="+", help="box side lengths")
    p.add_argument("--n", type=int, help="dimension of the ball or of the cap's sphere")
    p.add_argument("--radius", type=float, default=1.0, help="ball or sphere radius")
    p.add_argument("--angle", type=float, help="cap polar angle in radians")
    p.add_argument("--path", help="mesh file (.obj, .off, .tet)")
    p.add_argument("--intrinsic-dim", type=int, default=None)


def _geometry(args, parser):
    g = args.geometry
    if g == "box":
        if not args.lengths:
            parser.error("box needs --lengths")
        return Box(tuple(args.lengths))
    if g == "ball":
        if args.n is None:
            parser.error("ball needs --n")
        return EuclideanBall(args.n, args.radius)
    if g == "cap":
        if args.n is None or args.angle is None:
            parser.error("cap needs --n and --angle")
        return SphericalCap(args.n, args.radius, args.angle)
    if not args.path:
        parser.error("mesh needs --path")
    return MeshGeometry(args.path, args.intrinsic_dim or 2)


def _mesh(args):
    from .mesh import load_mesh

    return load_mesh(args.path, args.intrinsic_dim)


def _cmd_spectrum(args, parser) -> int:
    geom = _geometry(args, parser)
    op = Operator(args.operator)
    if args.source == "analytic":
        from .spectra import spectrum_for_geometry

        s = spectrum_for_geometry(geom, op, args.count)
    elif args.source == "fem":
        from .fem import fem_dirichlet_eigs

        if not isinstance(geom, MeshGeometry):
            parser.error("--source fem needs a mesh geometry")
        s = fem_dirichlet_eigs(_mesh(args), args.count).spectrum
    else:
        from .fem import fd_plate_eigs

        s = fd_plate_eigs(geom, args.grid_h, args.count, args.levels).spectrum
    sys.stdout.write(dumps(s.to_dict()))
    return 0


def _cmd_curvature(args, parser) -> int:
    geom = _geometry(args, parser)
    if isinstance(geom, MeshGeometry):
        from .mesh import discrete_mean_curvature

        summary = discrete_mean_curvature(_mesh(args)).summary
    else:
        from .mesh import curvature_summary_analytic

        summary = curvature_summary_analytic(geom)
    sys.stdout.write(dumps(summary.to_dict()))
    return 0


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        from .errors import ScenarioError

        raise ScenarioError(f"cannot read {path}: {exc}") from None


def _cmd_bound(args, parser) -> int:
    from .bounds import InequalityId, check
    from .sobolev import resolve_sobolev

    try:
        iid = InequalityId(args.inequality)
    except ValueError:
        parser.error(f"unknown inequality {args.inequality!r}")
    s = validate_spectrum(Spectrum.from_dict(_read_json(args.spectrum)))
    curv = None
    if args.curvature:
        curv = CurvatureSummary.from_dict(_read_json(args.curvature))
    elif args.h_sup is not None or args.h_ln is not None:
        if args.volume is None:
            parser.error("--h-sup/--h-ln need --volume")
        curv = CurvatureSummary(args.h_sup or 0.0, args.h_ln or 0.0, args.volume)
    sob = None
    if args.c1 is not None or args.c2 is not None:
        c1 = args.c1
        if c1 is not None and c1 != "talenti":
            try:
                c1 = float(c1)
            except ValueError:
                parser.error("--c1 takes a number or 'talenti'")
        sob = resolve_sobolev(SobolevConfig(c1, args.c2), curv, s.dim_n)
    report = check(iid, s, args.k, curv, sob)
    sys.stdout.write(dumps(report.to_dict()))
    return 0 if report.holds else 2


def _cmd_suite(args, parser) -> int:
    from .scenario import main_suite, shipped_scenarios_dir

    paths = args.scenarios or [shipped_scenarios_dir()]
    return main_suite(paths, args.output_dir)


def _cmd_gen_mesh(args, parser) -> int:
    from . import mesh as M

    kind = args.kind
    if kind == "icosphere":
        m = M.icosphere(args.subdiv, args.radius)
    elif kind == "hemisphere":
        m = M.hemisphere(args.subdiv, args.radius)
    elif kind == "grid":
        m = M.grid(args.nx, args.ny or args.nx, args.lx, args.ly)
    elif kind == "tetgrid":
        m = M.tetgrid(args.nx)
    else:
        m = M.disk_mesh(args.rings, args.radius)
    M.write_mesh(m, args.output)
    sys.stdout.write(dumps({"path": args.output, "vertices": m.num_vertices, "cells": len(m.cells)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eigenbound", description="Eigenvalue inequalities for Dirichlet problems.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("spectrum", help="print a spectrum as JSON")
    _add_geometry(sp)
    sp.add_argument("--operator", choices=[o.value for o in Operator], default="laplacian")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--source", choices=["analytic", "fem", "fd"], default="analytic")
    sp.add_argument("--grid-h", type=float, default=1.0 / 16)
    sp.add_argument("--levels", type=int, default=2)
    sp.set_defaults(func=_cmd_spectrum)

    cp = sub.add_parser("curvature", help="print a curvature summary as JSON")
    _add_geometry(cp)
    cp.set_defaults(func=_cmd_curvature)

    bp = sub.add_parser("bound", help="check one inequality at one k")
    bp.add_argument("inequality")
    bp.add_argument("--spectrum", required=True, help="spectrum JSON file")
    bp.add_argument("--k", type=int, required=True)
    bp.add_argument("--curvature", help="curvature summary JSON file")
    bp.add_argument("--h-sup", type=float)
    bp.add_argument("--h-ln", type=float)
    bp.add_argument("--volume", type=float)
    bp.add_argument("--c1", help="Sobolev constant or 'talenti'")
    bp.add_argument("--c2", type=float, help="Michael-Simon constant")
    bp.set_defaults(func=_cmd_bound)

    su = sub.add_parser("suite", help="run scenario files or directories")
    su.add_argument("scenarios", nargs="*", help="defaults to the shipped scenarios")
    su.add_argument("--output-dir", help="write reports here instead of each scenario's output path")
    su.set_defaults(func=_cmd_suite)

    gp = sub.add_parser("gen-mesh", help="write a generated mesh")
    gp.add_argument("kind", choices=["icosphere", "hemisphere", "grid", "tetgrid", "disk"])
    gp.add_argument("-o", "--output", required=True)
    gp.add_argument("--subdiv", type=int, default=2)
    gp.add_argument("--radius", type=float, default=1.0)
    gp.add_argument("--nx", type=int, default=8)
    gp.add_argument("--ny", type=int)
    gp.add_argument("--lx", type=float, default=1.0)
    gp.add_argument("--ly", type=float, default=1.0)
    gp.add_argument("--rings", type=int, default=8)
    gp.set_defaults(func=_cmd_gen_mesh)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    try:
        return args.func(args, sub)
    except EigenboundError as exc:
        sys.stderr.write(dumps({"error": exc.code, "message": str(exc)}))
        return 1
    except ValueError as exc:
        sys.stderr.write(dumps({"error": "invalid_input", "message": str(exc)}))
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
