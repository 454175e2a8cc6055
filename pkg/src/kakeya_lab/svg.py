"""Deterministic SVG emission of constructions.

Rendering is the one place exact values are approximated: coordinates
are printed with twelve decimal digits (flagged in a comment header)
and never feed back into any computation.  Output bytes are a pure
function of the scene and the versioned style table.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .geometry import ConvexPoly, Region

STYLE_VERSION = "1"

# Fixed, versioned styling; not configurable per call.
STYLE_TABLE = {
    "stage-square": "fill:#404040;stroke:none",
    "line-set": "fill:#1f4f82;stroke:none;fill-opacity:0.85",
    "besicovitch": "fill:#303030;stroke:none;fill-opacity:0.8",
    "sprout-0": "fill:#c8d8ee;stroke:#27415f;stroke-width:0.002",
    "sprout-1": "fill:#9fc0e8;stroke:#27415f;stroke-width:0.002",
    "sprout-2": "fill:#76a8e1;stroke:#27415f;stroke-width:0.002",
    "sprout-3": "fill:#4e91db;stroke:#27415f;stroke-width:0.002",
    "sprout-4": "fill:#2579d4;stroke:#27415f;stroke-width:0.002",
    "sprout-5": "fill:#1b5da6;stroke:#27415f;stroke-width:0.002",
    "sprout-6": "fill:#124078;stroke:#27415f;stroke-width:0.002",
    "kakeya-thickened": "fill:#e3b72c;stroke:none;fill-opacity:0.6",
    "kakeya-triangle": "fill:#7c3f00;stroke:none",
    "kakeya-rot45": "fill:#7c3f00;stroke:none;fill-opacity:0.35",
    "shift-piece": "fill:#3d8f5f;stroke:#1d4530;stroke-width:0.002;fill-opacity:0.7",
}

_HEADER_COMMENT = (
    "<!-- coordinates quantized to 12 decimal digits for rendering only; "
    "all computation upstream is exact rational -->"
)


def dec12(value: Fraction) -> str:
    """Fixed 12-decimal representation via integer arithmetic."""
    num, den = value.numerator, value.denominator
    sign = "-" if num < 0 else ""
    num = abs(num)
    scaled, rem = divmod(num * 10**12, den)
    if 2 * rem >= den:
        scaled += 1
    whole, frac = divmod(scaled, 10**12)
    return f"{sign}{whole}.{frac:012d}"


def _poly_sort_key(item: Tuple[str, ConvexPoly]):
    cls, poly = item
    return (cls, tuple((v.x, v.y) for v in poly.vertices))


def emit_svg(items: Iterable[Tuple[str, ConvexPoly]], pad: Fraction = Fraction(1, 20)) -> bytes:
    """Render (css-class, polygon) pairs deterministically.

    Parts are sorted by class then exact coordinates; the viewBox is the
    padded exact bounding box.  The y-axis is flipped so the figures
    read in mathematical orientation.
    """
    polys: List[Tuple[str, ConvexPoly]] = sorted(
        ((cls, p) for cls, p in items if p), key=_poly_sort_key
    )
    if not polys:
        xmin = ymin = Fraction(0)
        xmax = ymax = Fraction(1)
    else:
        boxes = [p.bbox for _, p in polys]
        xmin = min(b[0] for b in boxes)
        xmax = max(b[1] for b in boxes)
        ymin = min(b[2] for b in boxes)
        ymax = max(b[3] for b in boxes)
    extent = max(xmax - xmin, ymax - ymin, Fraction(1, 100))
    margin = extent * pad
    xmin -= margin
    xmax += margin
    ymin -= margin
    ymax += margin
    width = xmax - xmin
    height = ymax - ymin
    used = sorted({cls for cls, _ in polys})
    style_rules = "\n".join(
        f".{cls}{{{STYLE_TABLE[cls]}}}" for cls in used if cls in STYLE_TABLE
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        _HEADER_COMMENT,
        f"<!-- style table version {STYLE_VERSION} -->",
        (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{dec12(xmin)} {dec12(-ymax)} {dec12(width)} {dec12(height)}">'
        ),
        f"<style>{style_rules}</style>",
        '<g transform="scale(1,-1)">',
    ]
    for cls, poly in polys:
        coords = " ".join(f"{dec12(v.x)},{dec12(v.y)}" for v in poly.vertices)
        lines.append(f'<polygon class="{cls}" points="{coords}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def region_items(region: Region, cls: str) -> List[Tuple[str, ConvexPoly]]:
    return [(cls, p) for p in region.parts]


def rot45_float_items(region: Region, cls: str = "kakeya-rot45"):
    """Quarter-of-a-half turn copy for display only.

    The rotation by 45 degrees has irrational coordinates, so this helper
    returns float-backed polygons that must never re-enter exact code;
    they are quantized at emission like everything else.
    """
    import math

    from .geometry import Point2

    c = math.cos(math.pi / 4)
    items = []
    for part in region.parts:
        pts = []
        for v in part.vertices:
            x, y = float(v.x), float(v.y)
            xr = Fraction(round((x * c - y * c) * 10**12), 10**12)
            yr = Fraction(round((x * c + y * c) * 10**12), 10**12)
            pts.append(Point2(xr, yr))
        items.append((cls, ConvexPoly(pts)))
    return items
