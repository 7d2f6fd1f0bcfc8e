"""Command-line front end.

Exit status: 0 when every verdict holds, 1 when any check fails or is
inconclusive, 2 for usage errors.  Errors are written to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import jsonio
from .geodesic import GeodesicError, candidate_strips, fan_summary, shortest_geodesics
from .minimality import (
    check_no_acute_8,
    check_no_acute_10,
    check_nonobtuse_lower_bound,
    check_size_parity,
    main_theorem_report,
)
from .surface import SurfacePoint, build_cuboctahedron, curvature, isometry_group, total_angle
from .tolerances import DEFAULT, MAX_FACES, Tolerances
from .triangulation import construct_acute12, construct_nonobtuse8, triangulation_from_json, verify

CONSTRUCTIONS = {"nonobtuse8": construct_nonobtuse8, "acute12": construct_acute12}
CHECKS = ("parity", "nonobtuse-lb", "acute8", "acute10", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tolerances(items) -> Tolerances:
    kw = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or key not in ("eps_len", "eps_ang", "snap"):
            raise UsageError(f"--tolerance expects eps_len=, eps_ang= or snap=, got {item!r}")
        try:
            kw[key] = float(value)
        except ValueError:
            raise UsageError(f"bad tolerance value {value!r}") from None
    try:
        return DEFAULT.with_(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", action="append", metavar="KEY=VALUE",
                        help="override eps_len, eps_ang or snap (repeatable)")
    common.add_argument("--max-faces", type=int, default=MAX_FACES, help="face budget for geodesic search")
    common.add_argument("--edge-length", type=float, default=1.0)
    common.add_argument("--out", type=Path, help="write the JSON result here instead of stdout")
    common.add_argument("--svg-dir", type=Path, help="also write SVG figures into this directory")
    common.add_argument("--quiet", action="store_true", help="print nothing on success")

    p = _Parser(prog="acutetri", description="Geodesic triangulations of the cuboctahedron surface.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("surface", parents=[common], help="describe the surface")
    g = sub.add_parser("geodesics", parents=[common], help="all shortest geodesics between two points")
    g.add_argument("--from", dest="src", required=True, help="v<id>, e<id>:t or f<id>:x,y")
    g.add_argument("--to", dest="dst", required=True)
    g.add_argument("--all-strips", action="store_true",
                   help="also list every straight unfolding within --max-faces, shortest or not")
    f = sub.add_parser("fan", parents=[common], help="vertex-to-vertex geodesic fan at a vertex")
    f.add_argument("--vertex", type=int, required=True)
    t = sub.add_parser("triangulate", parents=[common], help="emit one of the two constructions")
    t.add_argument("--kind", choices=sorted(CONSTRUCTIONS), required=True)
    v = sub.add_parser("verify", parents=[common], help="verify a triangulation JSON file")
    v.add_argument("--in", dest="infile", type=Path, required=True)
    m = sub.add_parser("minimality", parents=[common], help="lower-bound certificates")
    m.add_argument("--check", choices=CHECKS, default="all")
    m.add_argument("--json", dest="json_out", type=Path, help="write the certificate JSON here")
    sub.add_parser("paper-check", parents=[common], help="run the whole pipeline and summarize")
    return p


# -- commands ----------------------------------------------------------------------------


def _surface(args, tol):
    s = build_cuboctahedron(args.edge_length)
    n = len(s.vertices)
    data = s.to_json()
    data["summary"] = {
        "faces": len(s.faces), "edges": len(s.edges), "vertices": n,
        "cone_angles": [total_angle(s, SurfacePoint.vertex(v)) for v in range(n)],
        "curvature_total": math.fsum(curvature(s, SurfacePoint.vertex(v)) for v in range(n)),
        "area": s.total_area,
        "isometries": len(isometry_group(s)),
    }
    return data, True, None


def _geodesics(args, tol):
    s = build_cuboctahedron(args.edge_length)
    try:
        p, q = SurfacePoint.parse(args.src), SurfacePoint.parse(args.dst)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    segs = shortest_geodesics(s, p, q, args.max_faces, tol.eps_len)
    data = {"from": str(p), "to": str(q), "count": len(segs),
            "distance": min((g.length for g in segs), default=None),
            "geodesics": [g.to_json() for g in segs]}
    if args.all_strips:
        best = data["distance"]
        strips = sorted(candidate_strips(s, p, q, args.max_faces, tol.eps_len), key=lambda g: (g.length, g.faces))
        data["strips"] = [{"faces": list(g.faces), "length": g.length, "shortest": g.length < best + tol.eps_len}
                          for g in strips]
    return data, True, None


def _fan(args, tol):
    s = build_cuboctahedron(args.edge_length)
    if not 0 <= args.vertex < len(s.vertices):
        raise UsageError(f"vertex must be in 0..{len(s.vertices) - 1}")
    data = fan_summary(s, args.vertex, args.max_faces)
    ok = data["count"] == 20 and data["max_gap_error"] <= tol.eps_ang
    data["even_gaps"] = ok

    def figures(d):
        from .svg import render_fan, write_svg
        write_svg(d / f"fan_v{args.vertex}.svg", render_fan(s, args.vertex))
    return data, ok, figures


def _triangulate(args, tol):
    s = build_cuboctahedron(args.edge_length)
    T = CONSTRUCTIONS[args.kind](s)
    data = T.to_json()
    data["surface"] = {"kind": "cuboctahedron", "edge_length": args.edge_length}
    data["construction"] = args.kind

    def figures(d):
        from .svg import render_net, write_svg
        write_svg(d / f"{args.kind}.svg", render_net(s, T, args.kind))
    return data, True, figures


def _verify(args, tol):
    try:
        raw = json.loads(args.infile.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.infile}: {exc}") from None
    L = raw.get("surface", {}).get("edge_length", args.edge_length)
    s = build_cuboctahedron(L)
    try:
        T = triangulation_from_json(s, raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed triangulation: {exc}") from None
    rep = verify(s, T, tol)
    return rep.to_json(), rep.valid, None


def _certificates(s, which, tol, max_faces):
    if which == "parity":
        return [check_size_parity(9, tol), check_size_parity(11, tol)]
    if which == "nonobtuse-lb":
        return [check_nonobtuse_lower_bound(s, tol)]
    if which == "acute8":
        return [check_no_acute_8(s, tol, max_faces)]
    if which == "acute10":
        return [check_no_acute_10(s, tol, max_faces)]
    return [c for w in CHECKS[:-1] for c in _certificates(s, w, tol, max_faces)]


def _minimality(args, tol):
    s = build_cuboctahedron(args.edge_length)
    certs = _certificates(s, args.check, tol, args.max_faces)
    data = certs[0].to_json() if len(certs) == 1 else {"certificates": [c.to_json() for c in certs]}
    if args.json_out:
        args.json_out.parent.mkdir(parents=True, exist_ok=True)
        args.json_out.write_text(jsonio.dumps(data), encoding="utf-8")
    return data, all(c.holds for c in certs), lambda d: _certificate_figures(s, certs, d)


def _certificate_figures(s, certs, d):
    from .svg import render_apex_side, render_case, write_svg
    for c in certs:
        if c.claim == "acute8":
            for name, rec in c.evidence["cases"].items():
                if rec is not None:
                    write_svg(d / f"acute8_case_{name}.svg", render_case(s, rec, f"5pi/12 rays on a {name} base"))
        if c.claim == "acute10":
            for k, a in enumerate(c.evidence["apex"]):
                for side, ev in a["evidence"]["sides"].items():
                    write_svg(d / f"acute10_orbit{k}_{side}.svg", render_apex_side(ev, f"apex cells, {side} side"))


def _paper_check(args, tol):
    s = build_cuboctahedron(args.edge_length)
    fans = [fan_summary(s, u, args.max_faces) for u in range(len(s.vertices))]
    fan_ok = all(f["count"] == 20 and f["max_gap_error"] <= tol.eps_ang for f in fans)
    main = main_theorem_report(s, tol, args.max_faces)
    lower = main.evidence["prerequisites"][0]
    cone = [s.cone_angle(v) for v in range(len(s.vertices))]
    summary = {
        "cone_angles_ok": all(abs(a - 5 * math.pi / 3) <= 1e-12 for a in cone),
        "fans": {"ok": fan_ok, "counts": [f["count"] for f in fans],
                 "max_gap_error": max(f["max_gap_error"] for f in fans)},
        "verdicts": dict(main.evidence["summary"], **{"thm1-lb": lower["verdict"]}),
        "acute_minimum": main.evidence["acute_minimum"],
        "nonobtuse_minimum": main.evidence["nonobtuse_minimum"],
    }
    ok = summary["cone_angles_ok"] and fan_ok and main.holds
    summary["all_green"] = ok
    data = {"summary": summary, "report": main.to_json()}

    def figures(d):
        from .svg import render_fan, render_net, write_svg
        write_svg(d / "net.svg", render_net(s, None, "cuboctahedron"))
        write_svg(d / "fan_v0.svg", render_fan(s, 0))
        for name, build in CONSTRUCTIONS.items():
            write_svg(d / f"{name}.svg", render_net(s, build(s), name))
        subs = {c["claim"]: c for c in main.evidence["sub_certificates"]}
        from .minimality.certificate import Certificate
        _certificate_figures(s, [Certificate(**subs["acute8"]), Certificate(**subs["acute10"])], d)
    return data, ok, figures


COMMANDS = {
    "surface": _surface,
    "geodesics": _geodesics,
    "fan": _fan,
    "triangulate": _triangulate,
    "verify": _verify,
    "minimality": _minimality,
    "paper-check": _paper_check,
}


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(jsonio.dumps({"error": kind, "message": message}, indent=None) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.max_faces < 1:
            raise UsageError("--max-faces must be positive")
        if not args.edge_length > 0:
            raise UsageError("--edge-length must be positive")
        tol = _tolerances(args.tolerance)
        data, ok, figures = COMMANDS[args.command](args, tol)
        if args.svg_dir and figures:
            figures(args.svg_dir)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except GeodesicError as exc:
        return _fail("geodesic", str(exc), 1)
    text = jsonio.dumps(data)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
    elif not args.quiet:
        sys.stdout.write(text + "\n")
    if not ok:
        sys.stderr.write(jsonio.dumps({"error": "verdict", "message": f"{args.command} did not hold"}, indent=None) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
