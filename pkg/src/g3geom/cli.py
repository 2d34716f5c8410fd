"""Command-line entry point.

Subcommands: frenet, darboux, classify, axis, isophote, revolve, verify.
Objects come from a --scene JSON file by name, or inline as
comma-separated expressions for quick experiments.  Exit codes: 0 ok,
1 numerical verification failure, 2 usage or parse error.

The environment variable G3_THREADS caps worker concurrency for grid
evaluation (0 or unset = auto).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import export
from .curve import CurveSpec, frenet_samples
from .errors import AxisError, G3Error
from .galilean import GVec3, normalize_axis
from .isophote import DEFAULT_GRID, DEFAULT_REFINE_TOL, IsophoteQuery, extract
from .scene import Scene, load_scene
from .surface import (
    ANALYTIC_TOL,
    RESIDUAL_TOL,
    SurfaceSpec,
    TraceSpec,
    axis_isotropic,
    axis_nonisotropic,
    classify_trace,
    darboux_samples,
)
from .surfrev import ProfileSpec, revolve_euclidean, revolve_isotropic
from .verify import run_suite

SCHEMA_VERSION = "1"


def _defaults(**extra) -> dict:
    base = {"analytic_tol": ANALYTIC_TOL, "residual_tol": RESIDUAL_TOL,
            "grid": list(DEFAULT_GRID), "refine_tol": DEFAULT_REFINE_TOL}
    base.update(extra)
    return base


def _emit_json(path: str, command: str, result, defaults: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, "command": command,
               "defaults": defaults, "result": result}
    data = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(data)
    else:
        Path(path).write_bytes(data.encode("utf-8"))


def _parse_params(items) -> dict[str, float]:
    params = {}
    for item in items or []:
        if "=" not in item:
            raise G3Error(f"--param needs name=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = float(v)
    return params


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise G3Error(f"interval must be written lo:hi, got {text!r}")
    a, b = float(parts[0]), float(parts[1])
    if not a < b:
        raise G3Error(f"empty interval {text!r}")
    return a, b


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise G3Error(f"grid must be written N1xN2, got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_axis(text: str) -> GVec3:
    parts = text.split(",")
    if len(parts) != 3:
        raise G3Error(f"axis must be written x,y,z, got {text!r}")
    return normalize_axis(GVec3(*(float(p) for p in parts)))


def _load_scene_opt(args) -> Scene | None:
    return load_scene(args.scene) if getattr(args, "scene", None) else None


def _inline_parts(text: str, n: int, what: str) -> list[str]:
    parts = text.split(",")
    if len(parts) != n:
        raise G3Error(
            f"inline {what} must be {n} comma-separated expressions "
            f"(or a scene object name), got {text!r}")
    return parts


def _resolve_curve(args, scene: Scene | None) -> CurveSpec:
    name = args.curve
    if scene and name in scene.curves:
        return scene.curves[name]
    f_src, g_src = _inline_parts(name, 2, "curve")
    domain = _parse_interval(args.domain) if args.domain else (0.0, 1.0)
    return CurveSpec.from_strings(f_src, g_src, domain, _parse_params(args.param))


def _resolve_surface(args, scene: Scene | None) -> SurfaceSpec:
    name = args.surface
    if scene and name in scene.surfaces:
        return scene.surfaces[name]
    x, y, z = _inline_parts(name, 3, "surface")
    if args.surface_domain:
        d1, d2 = args.surface_domain.split(",")
        domain = (_parse_interval(d1), _parse_interval(d2))
    else:
        domain = ((0.0, 1.0), (0.0, 1.0))
    return SurfaceSpec.from_strings(x, y, z, domain, _parse_params(args.param))


def _resolve_trace(args, scene: Scene | None) -> TraceSpec:
    name = args.trace
    if scene and name in scene.traces:
        return scene.traces[name]
    u1, u2 = _inline_parts(name, 2, "trace")
    domain = _parse_interval(args.trace_domain) if args.trace_domain else (0.0, 1.0)
    return TraceSpec.from_strings(u1, u2, domain, _parse_params(args.param))


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_frenet(args) -> int:
    scene = _load_scene_opt(args)
    curve = _resolve_curve(args, scene)
    S = np.linspace(curve.domain[0], curve.domain[1], args.samples)
    samples = frenet_samples(curve, S)
    print(f"{'s':>12} {'kappa':>16} {'tau':>16}")
    for f in samples:
        print(f"{f.s:12.6g} {f.kappa:16.10g} {f.tau:16.10g}")
    if args.csv:
        Path(args.csv).write_bytes(export.write_csv(samples))
    if args.json:
        result = [{"s": f.s, "kappa": f.kappa, "tau": f.tau,
                   "T": f.T.to_list(), "N": f.N.to_list(), "B": f.B.to_list()}
                  for f in samples]
        _emit_json(args.json, "frenet", result, _defaults(samples=args.samples))
    return 0


def cmd_darboux(args) -> int:
    scene = _load_scene_opt(args)
    surface = _resolve_surface(args, scene)
    trace = _resolve_trace(args, scene)
    S = trace.samples(args.samples)
    samples = darboux_samples(surface, trace, S)
    print(f"{'s':>12} {'kg':>14} {'kn':>14} {'taug':>14} {'phi':>14}")
    for d in samples:
        print(f"{d.s:12.6g} {d.kg:14.8g} {d.kn:14.8g} {d.tau_g:14.8g} {d.phi:14.8g}")
    if args.json:
        result = [{"s": d.s, "kg": d.kg, "kn": d.kn, "taug": d.tau_g, "phi": d.phi,
                   "T": d.T.to_list(), "Q": d.Q.to_list(), "n": d.n.to_list()}
                  for d in samples]
        _emit_json(args.json, "darboux", result, _defaults(samples=args.samples))
    return 0


def cmd_classify(args) -> int:
    scene = _load_scene_opt(args)
    surface = _resolve_surface(args, scene)
    trace = _resolve_trace(args, scene)
    c = classify_trace(surface, trace, samples=args.samples, tol=args.tol)
    print(f"geodesic           {c.geodesic}   (max |kg|   = {c.max_abs_kg:.3e})")
    print(f"asymptotic         {c.asymptotic}   (max |kn|   = {c.max_abs_kn:.3e})")
    print(f"line of curvature  {c.line_of_curvature}   (max |taug| = {c.max_abs_taug:.3e})")
    if args.json:
        result = {"geodesic": c.geodesic, "asymptotic": c.asymptotic,
                  "line_of_curvature": c.line_of_curvature,
                  "max_abs_kg": c.max_abs_kg, "max_abs_kn": c.max_abs_kn,
                  "max_abs_taug": c.max_abs_taug}
        _emit_json(args.json, "classify", result,
                   _defaults(samples=args.samples, tol=args.tol))
    return 0


def cmd_axis(args) -> int:
    scene = _load_scene_opt(args)
    surface = _resolve_surface(args, scene)
    trace = _resolve_trace(args, scene)
    try:
        if args.case == "isotropic":
            rep = axis_isotropic(surface, trace, args.angle,
                                 samples=args.samples, tol=args.tol)
        else:
            rep = axis_nonisotropic(surface, trace, args.angle,
                                    samples=args.samples, tol=args.tol)
    except AxisError as e:
        print(f"axis reconstruction failed: {e}", file=sys.stderr)
        return 1
    d_str = "none" if rep.d is None else ",".join(f"{v:.12g}" for v in rep.d.to_list())
    print(f"branch   {rep.branch}")
    print(f"status   {rep.status}")
    print(f"d        {d_str}")
    print(f"residual {'n/a' if rep.residual is None else f'{rep.residual:.3e}'}")
    if rep.note:
        print(f"note     {rep.note}")
    if args.json:
        result = {"branch": rep.branch, "status": rep.status,
                  "d": None if rep.d is None else rep.d.to_list(),
                  "theta_or_phi": rep.theta_or_phi, "residual": rep.residual,
                  "sign": rep.sign, "note": rep.note}
        _emit_json(args.json, "axis", result,
                   _defaults(samples=args.samples, tol=args.tol))
    return 0


def cmd_isophote(args) -> int:
    scene = _load_scene_opt(args)
    surface = _resolve_surface(args, scene)
    if scene and args.axis in scene.axes:
        axis = normalize_axis(scene.axes[args.axis])
    else:
        axis = _parse_axis(args.axis)
    grid = _parse_grid(args.grid) if args.grid else DEFAULT_GRID
    tol = args.refine_tol
    if args.silhouette:
        query = IsophoteQuery.for_silhouette(axis, grid, tol)
    elif args.beta is not None:
        query = IsophoteQuery.for_angle(axis, args.beta, grid, tol)
    else:
        query = IsophoteQuery.raw_level(axis, args.level, grid, tol)
    iso = extract(surface, query)
    nv = sum(len(p.points) for p in iso.polylines)
    print(f"level       {iso.level:.12g}")
    print(f"polylines   {len(iso.polylines)} ({nv} vertices)")
    if iso.constant_field is not None:
        cf = iso.constant_field
        print(f"constant    value={cf.value:.12g} spread={cf.spread:.3e} "
              f"matches_level={cf.matches_level}")
    print(f"cells       crossing={iso.stats.cells_crossing} "
          f"skipped={iso.stats.cells_skipped} of {iso.stats.cells_total}")
    if args.obj:
        Path(args.obj).write_bytes(export.write_obj(iso))
    if args.svg:
        Path(args.svg).write_bytes(export.write_svg(iso, surface.domain))
    if args.json:
        _emit_json(args.json, "isophote", iso.to_json_dict(),
                   _defaults(grid=list(grid), refine_tol=tol))
    return 0


def cmd_revolve(args) -> int:
    scene = _load_scene_opt(args)
    mode = args.mode
    if scene and args.profile in scene.profiles:
        entry = scene.profiles[args.profile]
        profile = entry.profile
        mode = mode or entry.mode
    else:
        domain = _parse_interval(args.domain) if args.domain else (0.0, 1.0)
        profile = ProfileSpec.from_string(args.profile, domain, c=args.c, A=args.A,
                                          parameters=_parse_params(args.param))
    if mode is None:
        raise G3Error("--mode euclidean|isotropic is required for inline profiles")
    if mode == "euclidean":
        surf = revolve_euclidean(profile)
    else:
        surf = revolve_isotropic(profile)
    print(f"mode    {mode}")
    print(f"x       {surf.x.source}")
    print(f"y       {surf.y.source}")
    print(f"z       {surf.z.source}")
    print(f"domain  u1 in [{surf.domain[0][0]:g}, {surf.domain[0][1]:g}], "
          f"u2 in [{surf.domain[1][0]:g}, {surf.domain[1][1]:g}]")
    mesh = None
    if args.mesh:
        n1, n2 = _parse_grid(args.mesh)
        mesh = export.tessellate(surf, n1, n2)
        print(f"mesh    {len(mesh.vertices)} vertices, {len(mesh.faces)} triangles")
        if args.obj:
            Path(args.obj).write_bytes(export.write_obj(mesh))
    if args.json:
        result = {"mode": mode,
                  "x": surf.x.source, "y": surf.y.source, "z": surf.z.source,
                  "domain": [list(surf.domain[0]), list(surf.domain[1])]}
        if mesh is not None:
            result["mesh"] = {"vertices": len(mesh.vertices),
                              "faces": len(mesh.faces)}
        _emit_json(args.json, "revolve", result, _defaults(c=args.c, A=args.A))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.filter)
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        extra = ""
        if "constant" in c["details"]:
            extra = f"  constant={c['details']['constant']!r}"
        elif "max_deviation" in c["details"]:
            extra = f"  max_deviation={c['details']['max_deviation']:.3e}"
        elif "max_residual" in c["details"]:
            extra = f"  max_residual={c['details']['max_residual']:.3e}"
        print(f"[{status}] {c['name']}{extra}")
    counts = report["counts"]
    print(f"{counts['passed']}/{counts['total']} checks passed")
    if counts["total"] == 0:
        print(f"no checks matched filter {args.filter!r}", file=sys.stderr)
    if args.json:
        data = json.dumps(report, sort_keys=True, indent=2) + "\n"
        if args.json == "-":
            sys.stdout.write(data)
        else:
            Path(args.json).write_bytes(data.encode("utf-8"))
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(p, scene=True, params=True):
    if scene:
        p.add_argument("--scene", help="scene JSON file providing named objects")
    if params:
        p.add_argument("--param", action="append", metavar="NAME=VALUE",
                       help="bind a parameter for inline expressions")
    p.add_argument("--json", metavar="PATH",
                   help="write a machine-readable JSON report ('-' for stdout)")


def _add_surface_trace(p):
    p.add_argument("--surface", required=True,
                   help="scene surface name or inline 'x,y,z'")
    p.add_argument("--trace", required=True,
                   help="scene trace name or inline 'u1,u2'")
    p.add_argument("--surface-domain", metavar="A:B,C:D",
                   help="parameter rectangle for an inline surface")
    p.add_argument("--trace-domain", metavar="A:B",
                   help="parameter interval for an inline trace")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="g3geom",
        description="Differential geometry of curves, surfaces and isophote "
                    "lines in Galilean 3-space.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frenet", help="Frenet frame and invariants of a curve")
    p.add_argument("--curve", required=True,
                   help="scene curve name or inline 'f,g' in the variable s")
    p.add_argument("--domain", metavar="A:B", help="domain for an inline curve")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--csv", metavar="PATH", help="write samples as CSV")
    _add_common(p)
    p.set_defaults(func=cmd_frenet)

    p = sub.add_parser("darboux", help="Darboux frame along a surface trace")
    _add_surface_trace(p)
    p.add_argument("--samples", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_darboux)

    p = sub.add_parser("classify", help="geodesic / asymptotic / line-of-curvature flags")
    _add_surface_trace(p)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--tol", type=float, default=ANALYTIC_TOL)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("axis", help="reconstruct the isophote axis along a trace")
    p.add_argument("--case", choices=("isotropic", "nonisotropic"), required=True)
    _add_surface_trace(p)
    p.add_argument("--angle", type=float, required=True,
                   help="theta (isotropic case) or the raw measure phi")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--tol", type=float, default=ANALYTIC_TOL)
    _add_common(p)
    p.set_defaults(func=cmd_axis)

    p = sub.add_parser("isophote", help="extract isophote or silhouette curves")
    p.add_argument("--surface", required=True,
                   help="scene surface name or inline 'x,y,z'")
    p.add_argument("--surface-domain", metavar="A:B,C:D")
    p.add_argument("--axis", required=True, help="scene axis name or inline 'x,y,z'")
    level = p.add_mutually_exclusive_group(required=True)
    level.add_argument("--beta", type=float, help="angle level (isotropic axis)")
    level.add_argument("--level", type=float, help="raw field level")
    level.add_argument("--silhouette", action="store_true", help="level 0")
    p.add_argument("--grid", metavar="N1xN2", help="cell grid (default 256x256)")
    p.add_argument("--refine-tol", type=float, default=DEFAULT_REFINE_TOL)
    p.add_argument("--obj", metavar="PATH", help="write polylines as OBJ")
    p.add_argument("--svg", metavar="PATH", help="write a parameter-domain SVG")
    _add_common(p)
    p.set_defaults(func=cmd_isophote)

    p = sub.add_parser("revolve", help="build a surface of revolution from a profile")
    p.add_argument("--profile", required=True,
                   help="scene profile name or inline g(s) expression")
    p.add_argument("--mode", choices=("euclidean", "isotropic"))
    p.add_argument("--domain", metavar="A:B", help="profile domain (inline)")
    p.add_argument("--c", type=float, default=1.0, help="isotropic rotation radius")
    p.add_argument("--A", type=float, default=0.0, help="profile constant")
    p.add_argument("--mesh", metavar="N1xN2", help="tessellate to a mesh")
    p.add_argument("--obj", metavar="PATH", help="write the mesh as OBJ")
    _add_common(p)
    p.set_defaults(func=cmd_revolve)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--filter", help="run only checks whose name matches")
    p.add_argument("--json", metavar="PATH",
                   help="write the deterministic JSON report ('-' for stdout)")
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except G3Error as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
