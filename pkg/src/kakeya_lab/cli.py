"""Command-line surface.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 check failure, 2 usage error, 3 budget cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import caps, fractal, perron, svg, verify
from .errors import CapExceeded, UsageError
from .geometry import AxisBox, ConvexPoly, Point2, Region, rat, region_area
from .jsonio import (
    emit_json,
    format_rational,
    parse_json,
    point_to_json,
    region_from_json,
    region_to_json,
    spec_to_json,
    square_to_json,
    trace_to_json,
    triangle_to_json,
)
from .martingale import (
    BesicovitchTrunc,
    KakeyaTrunc,
    OpenSet,
    YAxis,
    approx_error_budget,
    besicovitch_hat,
    cube,
    fairness_residual,
    mg_value,
    trace,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}") from exc


def _rational_list(text: str, expect: int | None = None):
    parts = [p for p in text.split(",") if p != ""]
    if expect is not None and len(parts) != expect:
        raise UsageError(f"expected {expect} comma-separated values, got {len(parts)}")
    return [_rational(p) for p in parts]


def _int_list(text: str):
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError as exc:
        raise UsageError(f"malformed integer list {text!r}") from exc


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="kakeya-lab", description=__doc__)
    groups = top.add_subparsers(dest="group", required=True)

    p = groups.add_parser("fractal", help="dust stages and parameter points")
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("stage")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--format", choices=("json", "svg"), default="json")
    s = sub.add_parser("point")
    s.add_argument("--slope-digits", required=True)
    s.add_argument("--k", type=int, required=True)

    p = groups.add_parser("lineset", help="line-set windows and areas")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in ("region", "area"):
        s = sub.add_parser(name)
        s.add_argument("--t", required=True)
        s.add_argument("--k", type=int, required=True)
        if name == "region":
            s.add_argument("--format", choices=("json", "svg"), default="json")
    s = sub.add_parser("kindex")
    s.add_argument("--t", required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--cap", type=int, required=True)

    p = groups.add_parser("mg", help="martingale values, traces, fairness")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in ("value", "trace", "fairness"):
        s = sub.add_parser(name)
        s.add_argument(
            "--which",
            choices=("open-set", "y-axis", "besicovitch", "kakeya"),
            required=True,
        )
        s.add_argument("--g", help="region JSON file for open-set")
        s.add_argument("--s", type=int, default=0, help="accuracy exponent")
        s.add_argument("--p", type=int, help="fixed truncation radius (besicovitch)")
        s.add_argument("--jmax", type=int, help="fixed truncation depth (kakeya)")
        if name == "value":
            s.add_argument("--r", type=int, required=True)
            s.add_argument("--u", required=True)
        elif name == "trace":
            s.add_argument("--point", required=True)
            s.add_argument("--rmax", type=int, required=True)
        else:
            s.add_argument("--rmax", type=int, required=True)

    p = groups.add_parser("perron", help="sprouted trees")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in ("sprout", "area"):
        s = sub.add_parser(name)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--triangle", required=True, help="UX,UY,VX,VY,WX,WY")
        if name == "sprout":
            s.add_argument("--format", choices=("json", "svg"), default="json")

    p = groups.add_parser("kakeya", help="staged construction")
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("stage")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--format", choices=("json", "svg"), default="json")
    s = sub.add_parser("segment")
    s.add_argument("--slope", required=True)
    s.add_argument("--j", type=int, required=True)

    p = groups.add_parser("verify", help="acceptance suites")
    p.add_argument(
        "--suite",
        choices=tuple(verify.SUITES),
        default="all",
    )
    p.add_argument("--k-max", type=int, dest="k_max")
    p.add_argument("--j-max", type=int, dest="j_max")
    return top


def _mg_spec(args, r_hint: int | None = None):
    which = args.which
    if which == "open-set":
        if not args.g:
            raise UsageError("open-set needs --g REGION_FILE")
        with open(args.g, "rb") as fh:
            region = region_from_json(parse_json(fh.read()))
        return OpenSet(region)
    if which == "y-axis":
        return YAxis()
    if which == "besicovitch":
        if args.p is not None:
            return BesicovitchTrunc(args.p, caps.window_cap())
        if r_hint is None:
            raise UsageError("besicovitch needs --p here (the --s form varies with r)")
        return BesicovitchTrunc(args.s + 2 * r_hint + 6, caps.window_cap())
    if which == "kakeya":
        if args.jmax is not None:
            return KakeyaTrunc(args.jmax)
        if r_hint is None:
            raise UsageError("kakeya needs --jmax here (the --s form varies with r)")
        return KakeyaTrunc(args.s + 2 * r_hint)
    raise UsageError(f"unknown martingale {which!r}")


def _parse_triangle(text: str) -> perron.Triangle:
    vals = _rational_list(text, expect=6)
    return perron.Triangle(
        u=Point2(vals[0], vals[1]),
        v=Point2(vals[2], vals[3]),
        w=Point2(vals[4], vals[5]),
    )


def _cmd_fractal(args) -> int:
    if args.cmd == "stage":
        squares = fractal.stage(args.k)
        if args.format == "svg":
            _write(svg.emit_svg([("stage-square", s.poly()) for s in squares]))
        else:
            _write(emit_json([square_to_json(s) for s in squares]))
        return EXIT_OK
    if args.cmd == "point":
        digits = _int_list(args.slope_digits)
        point = fractal.slope_to_point(digits, args.k)
        _write(emit_json(point_to_json(point)))
        return EXIT_OK
    raise UsageError("unknown fractal command")


def _cmd_lineset(args) -> int:
    t = tuple(_int_list(args.t))
    if len(t) != 2:
        raise UsageError("--t needs two integers")
    if args.cmd == "region":
        region = fractal.line_set_window(t, args.k)
        if args.format == "svg":
            _write(svg.emit_svg(svg.region_items(region, "line-set")))
        else:
            _write(emit_json(region_to_json(region)))
        return EXIT_OK
    if args.cmd == "area":
        _write(emit_json(format_rational(fractal.window_area(t, args.k))))
        return EXIT_OK
    if args.cmd == "kindex":
        k = fractal.area_drop_stage(t, args.j, cap=args.cap)
        _write(emit_json({"k": k}))
        return EXIT_OK
    raise UsageError("unknown lineset command")


def _cmd_mg(args) -> int:
    if args.cmd == "value":
        u = tuple(_int_list(args.u))
        spec = _mg_spec(args, r_hint=args.r)
        q = cube(len(u), args.r, u)
        value = mg_value(spec, q)
        payload = {"value": format_rational(value), "spec": spec_to_json(spec)}
        if args.which == "besicovitch" and args.p is None:
            payload["error_budget"] = format_rational(approx_error_budget(args.s, args.r))
        _write(emit_json(payload))
        return EXIT_OK
    if args.cmd == "trace":
        coords = _rational_list(args.point)
        spec = _mg_spec(args, r_hint=None if args.which in ("besicovitch", "kakeya") else 0)
        tr = trace(spec, coords, args.rmax)
        _write(emit_json(trace_to_json(tr)))
        return EXIT_OK
    if args.cmd == "fairness":
        spec = _mg_spec(args, r_hint=None if args.which in ("besicovitch", "kakeya") else 0)
        bad = 0
        checked = 0
        for r in range(args.rmax + 1):
            top = 1 << r
            for u1 in range(top):
                for u2 in range(top):
                    checked += 1
                    if fairness_residual(spec, cube(2, r, (u1, u2))) != 0:
                        bad += 1
        _write(emit_json({"cubes": checked, "nonzero_residuals": bad}))
        return EXIT_OK if bad == 0 else EXIT_CHECK_FAILED
    raise UsageError("unknown mg command")


def _cmd_perron(args) -> int:
    tri = _parse_triangle(args.triangle)
    if args.cmd == "sprout":
        stages, tree = perron.sprout(tri, args.k)
        if args.format == "svg":
            items = []
            for st in stages:
                cls = f"sprout-{min(st.level, 6)}"
                for triple in st.triangles:
                    items.append((cls, ConvexPoly(triple)))
            _write(svg.emit_svg(items))
        else:
            payload = {
                "stages": [
                    {
                        "level": st.level,
                        "triangles": [
                            [point_to_json(p) for p in triple] for triple in st.triangles
                        ],
                    }
                    for st in stages
                ],
                "area": format_rational(region_area(tree)),
            }
            _write(emit_json(payload))
        return EXIT_OK
    if args.cmd == "area":
        computed, predicted = perron.perron_area_check(tri, args.k)
        _write(
            emit_json(
                {
                    "computed": format_rational(computed),
                    "stated_constant_value": format_rational(predicted),
                    "construction_law_value": format_rational(2 * tri.area / (args.k + 2)),
                }
            )
        )
        return EXIT_OK
    raise UsageError("unknown perron command")


def _cmd_kakeya(args) -> int:
    if args.cmd == "stage":
        st = perron.kakeya_stage(args.j)
        if args.format == "svg":
            items = svg.region_items(st.thickened, "kakeya-thickened")
            items += svg.region_items(st.region, "kakeya-triangle")
            items += svg.rot45_float_items(st.region)
            _write(svg.emit_svg(items))
        else:
            _write(
                emit_json(
                    {
                        "j": st.j,
                        "p": st.p,
                        "triangle_count": len(st.triangles),
                        "eps": format_rational(st.eps),
                        "triangles": [triangle_to_json(t) for t in st.triangles],
                    }
                )
            )
        return EXIT_OK
    if args.cmd == "segment":
        slope = _rational(args.slope)
        seg = perron.direction_segment(slope, args.j)
        if seg is None:
            print("direction outside stage coverage", file=sys.stderr)
            return EXIT_CHECK_FAILED
        p, q = seg
        _write(emit_json({"p": point_to_json(p), "q": point_to_json(q)}))
        return EXIT_OK
    raise UsageError("unknown kakeya command")


def _cmd_verify(args) -> int:
    opts = {}
    if args.k_max is not None:
        opts["k_max"] = args.k_max
    if args.j_max is not None:
        opts["j_max"] = args.j_max
    report = verify.run_suite(args.suite, opts, log=lambda line: print(line, file=sys.stderr))
    _write(emit_json(verify.report_to_json(report)))
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


def cmd_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.group == "fractal":
            return _cmd_fractal(args)
        if args.group == "lineset":
            return _cmd_lineset(args)
        if args.group == "mg":
            return _cmd_mg(args)
        if args.group == "perron":
            return _cmd_perron(args)
        if args.group == "kakeya":
            return _cmd_kakeya(args)
        if args.group == "verify":
            return _cmd_verify(args)
        raise UsageError(f"unknown command group {args.group!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cmd_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
