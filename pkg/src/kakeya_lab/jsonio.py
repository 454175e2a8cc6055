"""Canonical JSON encoding for every exposed value type.

Rationals travel as strings ("p/q", or "p" for integers, sign on the
numerator) so the wire format stays exact; everything is emitted with
sorted keys and compact separators so print-parse-print is the
identity on bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geometry import AxisBox, ConvexPoly, Point2, Region, rat
from .martingale import (
    BesicovitchTrunc,
    CapitalTrace,
    DyadicCube,
    KakeyaTrunc,
    OpenSet,
    ProductLift,
    SymmetryXform,
    WeightedSum,
    YAxis,
)
from .perron import Triangle
from .fractal import Square


def format_rational(value: Fraction) -> str:
    value = rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"rational text expected, got {type(text).__name__}")
    return Fraction(text)


def point_to_json(p: Point2) -> list:
    return [format_rational(p.x), format_rational(p.y)]


def point_from_json(data) -> Point2:
    x, y = data
    return Point2(parse_rational(x), parse_rational(y))


def poly_to_json(p: ConvexPoly) -> dict:
    return {"vertices": [point_to_json(v) for v in p.vertices]}


def poly_from_json(data) -> ConvexPoly:
    return ConvexPoly([point_from_json(v) for v in data["vertices"]])


def region_to_json(r: Region) -> dict:
    return {"parts": [poly_to_json(p) for p in r.parts]}


def region_from_json(data) -> Region:
    return Region(poly_from_json(p) for p in data["parts"])


def box_to_json(b: AxisBox) -> dict:
    return {
        "x": [format_rational(b.x0), format_rational(b.x1)],
        "y": [format_rational(b.y0), format_rational(b.y1)],
    }


def box_from_json(data) -> AxisBox:
    return AxisBox(
        parse_rational(data["x"][0]),
        parse_rational(data["x"][1]),
        parse_rational(data["y"][0]),
        parse_rational(data["y"][1]),
    )


def square_to_json(s: Square) -> dict:
    return {"corner": point_to_json(s.corner), "side": format_rational(s.side)}


def square_from_json(data) -> Square:
    return Square(point_from_json(data["corner"]), parse_rational(data["side"]))


def triangle_to_json(t: Triangle) -> dict:
    return {
        "u": point_to_json(t.u),
        "v": point_to_json(t.v),
        "w": point_to_json(t.w),
    }


def triangle_from_json(data) -> Triangle:
    return Triangle(
        point_from_json(data["u"]),
        point_from_json(data["v"]),
        point_from_json(data["w"]),
    )


def cube_to_json(q: DyadicCube) -> dict:
    return {"n": q.n, "r": q.r, "u": list(q.u)}


def cube_from_json(data) -> DyadicCube:
    return DyadicCube(int(data["n"]), int(data["r"]), tuple(int(x) for x in data["u"]))


def trace_to_json(t: CapitalTrace) -> dict:
    return {
        "point": [format_rational(c) for c in t.point],
        "entries": [[r, format_rational(v)] for r, v in t.entries],
    }


def trace_from_json(data) -> CapitalTrace:
    return CapitalTrace(
        tuple(parse_rational(c) for c in data["point"]),
        tuple((int(r), parse_rational(v)) for r, v in data["entries"]),
    )


def spec_to_json(spec) -> dict:
    if isinstance(spec, OpenSet):
        return {
            "kind": "open-set",
            "region": region_to_json(spec.region),
            "total_mass": format_rational(spec.total_mass),
        }
    if isinstance(spec, YAxis):
        return {"kind": "y-axis"}
    if isinstance(spec, BesicovitchTrunc):
        return {"kind": "besicovitch", "p": spec.p, "k_cap": spec.k_cap}
    if isinstance(spec, KakeyaTrunc):
        return {"kind": "kakeya", "j_max": spec.j_max}
    if isinstance(spec, WeightedSum):
        return {
            "kind": "weighted-sum",
            "n": spec.n,
            "terms": [[format_rational(c), spec_to_json(s)] for c, s in spec.terms],
        }
    if isinstance(spec, ProductLift):
        return {
            "kind": "product-lift",
            "n": spec.n,
            "dims": list(spec.dims),
            "factor": spec_to_json(spec.factor),
        }
    if isinstance(spec, SymmetryXform):
        return {"kind": "symmetry", "g": spec.g, "base": spec_to_json(spec.base)}
    raise TypeError(f"unknown spec {type(spec).__name__}")


def spec_from_json(data) -> Any:
    kind = data["kind"]
    if kind == "open-set":
        return OpenSet(region_from_json(data["region"]), parse_rational(data["total_mass"]))
    if kind == "y-axis":
        return YAxis()
    if kind == "besicovitch":
        return BesicovitchTrunc(int(data["p"]), int(data["k_cap"]))
    if kind == "kakeya":
        return KakeyaTrunc(int(data["j_max"]))
    if kind == "weighted-sum":
        return WeightedSum(
            int(data["n"]),
            tuple((parse_rational(c), spec_from_json(s)) for c, s in data["terms"]),
        )
    if kind == "product-lift":
        return ProductLift(
            int(data["n"]),
            tuple(int(d) for d in data["dims"]),
            spec_from_json(data["factor"]),
        )
    if kind == "symmetry":
        return SymmetryXform(data["g"], spec_from_json(data["base"]))
    raise ValueError(f"unknown spec kind {kind!r}")


def emit_json(value) -> bytes:
    """Canonical bytes: sorted keys, compact separators, trailing newline."""
    return (json.dumps(value, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def parse_json(raw: bytes | str):
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    return json.loads(raw)
