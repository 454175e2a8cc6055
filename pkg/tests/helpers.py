"""Independent oracles used to freeze expected values.

The row-scan rasterizer below is deliberately a different algorithm
from the library's vertical-decomposition sweep: it integrates cell
midpoints row by row, so agreement between the two is meaningful.
"""

from __future__ import annotations

from fractions import Fraction

from kakeya_lab.geometry import ConvexPoly, Region


def _row_span(poly: ConvexPoly, y: Fraction):
    """[xlo, xhi] of a convex polygon at height y, or None."""
    xlo = xhi = None
    verts = poly.vertices
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if a.y == b.y:
            if a.y == y:
                lo, hi = min(a.x, b.x), max(a.x, b.x)
                xlo = lo if xlo is None else min(xlo, lo)
                xhi = hi if xhi is None else max(xhi, hi)
            continue
        t = (y - a.y) / (b.y - a.y)
        if 0 <= t <= 1:
            x = a.x + t * (b.x - a.x)
            xlo = x if xlo is None else min(xlo, x)
            xhi = x if xhi is None else max(xhi, x)
    if xlo is None or xhi is None or xlo > xhi:
        return None
    return xlo, xhi


def raster_union_area(region: Region, g: int) -> Fraction:
    """Midpoint row-scan rasterization of the union at resolution 2^-g."""
    if not region.parts:
        return Fraction(0)
    h = Fraction(1, 2**g)
    xmin, xmax, ymin, ymax = region.bbox()
    row0 = (ymin / h).__floor__()
    row1 = (ymax / h).__ceil__()
    cells = 0
    for row in range(row0, row1 + 1):
        y = (row + Fraction(1, 2)) * h
        spans = []
        for part in region.parts:
            span = _row_span(part, y)
            if span is not None:
                spans.append(span)
        if not spans:
            continue
        spans.sort()
        merged = [list(spans[0])]
        for lo, hi in spans[1:]:
            if lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        for lo, hi in merged:
            # count midpoints (col + 1/2) h inside [lo, hi]
            first = ((lo / h) - Fraction(1, 2)).__ceil__()
            last = ((hi / h) - Fraction(1, 2)).__floor__()
            if last >= first:
                cells += last - first + 1
    return cells * h * h


def raster_segment_cover(p, q, region: Region, samples: int) -> bool:
    """Membership of many segment sample points, closed region."""
    for i in range(samples + 1):
        t = Fraction(i, samples)
        point = p + t * (q - p)
        if not region.contains_point(point):
            return False
    return True
