"""Exact rational planar geometry kernel.

Every coordinate, area and predicate here is an arbitrary-precision
rational (`fractions.Fraction`); the module contains no floating point.
A :class:`Region` is a finite list of possibly overlapping convex
polygons standing for their union, and all set-level predicates are
decided up to Lebesgue measure zero, so open/closed boundary
distinctions are deliberately not represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RatLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value: RatLike) -> Fraction:
    """Coerce an int, a 'p/q' string, or a Fraction to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Point2:
    x: Fraction
    y: Fraction

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, s) -> "Point2":
        s = rat(s)
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Point2":
        s = rat(s)
        return Point2(self.x / s, self.y / s)

    def key(self):
        return (self.x, self.y)


def pt(x: RatLike, y: RatLike) -> Point2:
    return Point2(rat(x), rat(y))


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    """Signed parallelogram area of OA x OB; > 0 when OAB turns left."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {(x, y) : a*x + b*y <= c} with (a, b) != (0, 0)."""

    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def of(cls, a: RatLike, b: RatLike, c: RatLike) -> "HalfPlane":
        a, b, c = rat(a), rat(b), rat(c)
        if a == 0 and b == 0:
            raise ValueError("degenerate half-plane")
        return cls(a, b, c)

    @classmethod
    def left_of(cls, p: Point2, q: Point2) -> "HalfPlane":
        """Closed half-plane to the left of the directed line p -> q."""
        if p == q:
            raise ValueError("half-plane through coincident points")
        # cross(p, q, r) >= 0  <=>  a*rx + b*ry <= c
        a = q.y - p.y
        b = p.x - q.x
        c = a * p.x + b * p.y
        return cls(a, b, c)

    def value(self, p: Point2) -> Fraction:
        """<= 0 inside, 0 on the boundary line."""
        return self.a * p.x + self.b * p.y - self.c

    @classmethod
    def y_below(cls, slope: Fraction, intercept: Fraction) -> "HalfPlane":
        """{y <= slope*x + intercept}"""
        return cls(-slope, ONE, intercept)

    @classmethod
    def y_above(cls, slope: Fraction, intercept: Fraction) -> "HalfPlane":
        """{y >= slope*x + intercept}"""
        return cls(slope, -ONE, -intercept)


def _canonical_vertices(points: Sequence[Point2]) -> tuple:
    """Canonicalize to a strictly convex CCW tuple, or () when degenerate."""
    verts = [p for i, p in enumerate(points) if p != points[i - 1]]
    if len(verts) < 3:
        return ()
    area2 = ZERO
    for i, p in enumerate(verts):
        q = verts[(i + 1) % len(verts)]
        area2 += p.x * q.y - q.x * p.y
    if area2 == 0:
        return ()
    if area2 < 0:
        verts.reverse()
    # Drop collinear vertices until strictly convex.
    changed = True
    while changed and len(verts) >= 3:
        changed = False
        kept = []
        n = len(verts)
        for i in range(n):
            c = cross(verts[i - 1], verts[i], verts[(i + 1) % n])
            if c > 0:
                kept.append(verts[i])
            elif c < 0:
                raise ValueError("vertex list is not convex")
            else:
                changed = True
        verts = kept
    if len(verts) < 3:
        return ()
    start = min(range(len(verts)), key=lambda i: verts[i].key())
    return tuple(verts[start:] + verts[:start])


class ConvexPoly:
    """Immutable convex polygon with CCW vertices, possibly empty."""

    __slots__ = ("vertices", "_area", "_bbox")

    def __init__(self, points: Iterable[Point2] = ()):
        self.vertices = _canonical_vertices(tuple(points))
        self._area = None
        self._bbox = None

    def __bool__(self) -> bool:
        return bool(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexPoly) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"ConvexPoly({list(self.vertices)!r})"

    @property
    def area(self) -> Fraction:
        if self._area is None:
            total = ZERO
            vs = self.vertices
            for i, p in enumerate(vs):
                q = vs[(i + 1) % len(vs)]
                total += p.x * q.y - q.x * p.y
            self._area = total / 2
        return self._area

    @property
    def bbox(self):
        """(xmin, xmax, ymin, ymax) or None when empty."""
        if not self.vertices:
            return None
        if self._bbox is None:
            xs = [v.x for v in self.vertices]
            ys = [v.y for v in self.vertices]
            self._bbox = (min(xs), max(xs), min(ys), max(ys))
        return self._bbox

    def edges(self):
        vs = self.vertices
        n = len(vs)
        return [(vs[i], vs[(i + 1) % n]) for i in range(n)]

    def translate(self, dx: RatLike, dy: RatLike) -> "ConvexPoly":
        d = pt(dx, dy)
        return ConvexPoly([v + d for v in self.vertices])

    def contains_point(self, p: Point2) -> bool:
        """Closed membership test."""
        if not self.vertices:
            return False
        return all(cross(a, b, p) >= 0 for a, b in self.edges())


EMPTY_POLY = ConvexPoly()


def poly_area(p: ConvexPoly) -> Fraction:
    return p.area if p else ZERO


def clip_convex(p: ConvexPoly, half: HalfPlane) -> ConvexPoly:
    """Exact intersection of a convex polygon with a closed half-plane."""
    if not p:
        return EMPTY_POLY
    out = []
    vs = p.vertices
    vals = [half.value(v) for v in vs]
    n = len(vs)
    for i in range(n):
        cur, nxt = vs[i], vs[(i + 1) % n]
        fc, fn = vals[i], vals[(i + 1) % n]
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            t = fc / (fc - fn)
            out.append(cur + t * (nxt - cur))
    return ConvexPoly(out)


@dataclass(frozen=True)
class AxisBox:
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    @classmethod
    def of(cls, x0: RatLike, x1: RatLike, y0: RatLike, y1: RatLike) -> "AxisBox":
        x0, x1, y0, y1 = rat(x0), rat(x1), rat(y0), rat(y1)
        if x0 > x1 or y0 > y1:
            raise ValueError("axis box needs lo <= hi on both axes")
        return cls(x0, x1, y0, y1)

    @classmethod
    def unit(cls) -> "AxisBox":
        return cls(ZERO, ONE, ZERO, ONE)

    def poly(self) -> ConvexPoly:
        return ConvexPoly(
            [
                Point2(self.x0, self.y0),
                Point2(self.x1, self.y0),
                Point2(self.x1, self.y1),
                Point2(self.x0, self.y1),
            ]
        )

    def translate(self, dx: RatLike, dy: RatLike) -> "AxisBox":
        dx, dy = rat(dx), rat(dy)
        return AxisBox(self.x0 + dx, self.x1 + dx, self.y0 + dy, self.y1 + dy)

    def contains_point(self, p: Point2) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1


def clip_poly_to_box(p: ConvexPoly, box: AxisBox) -> ConvexPoly:
    if not p:
        return EMPTY_POLY
    bb = p.bbox
    if bb[0] >= box.x0 and bb[1] <= box.x1 and bb[2] >= box.y0 and bb[3] <= box.y1:
        return p
    if bb[1] < box.x0 or bb[0] > box.x1 or bb[3] < box.y0 or bb[2] > box.y1:
        return EMPTY_POLY
    out = clip_convex(p, HalfPlane.of(-1, 0, -box.x0))
    out = clip_convex(out, HalfPlane.of(1, 0, box.x1))
    out = clip_convex(out, HalfPlane.of(0, -1, -box.y0))
    out = clip_convex(out, HalfPlane.of(0, 1, box.y1))
    return out


class Region:
    """Union of convex parts, up to measure zero. Parts may overlap."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[ConvexPoly] = ()):
        self.parts = tuple(p for p in parts if p)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Region(<{len(self.parts)} parts>)"

    @classmethod
    def of(cls, *parts: ConvexPoly) -> "Region":
        return cls(parts)

    def translate(self, dx: RatLike, dy: RatLike) -> "Region":
        return Region(p.translate(dx, dy) for p in self.parts)

    def bbox(self):
        if not self.parts:
            return None
        boxes = [p.bbox for p in self.parts]
        return (
            min(b[0] for b in boxes),
            max(b[1] for b in boxes),
            min(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def contains_point(self, p: Point2) -> bool:
        return any(part.contains_point(p) for part in self.parts)


EMPTY_REGION = Region()


def clip_to_box(region: Region, box: AxisBox) -> Region:
    return Region(clip_poly_to_box(p, box) for p in region.parts)


def transform_poly(p: ConvexPoly, f) -> ConvexPoly:
    """Apply an exact point map; orientation is re-canonicalized."""
    return ConvexPoly([f(v) for v in p.vertices])


def rot90_point(p: Point2) -> Point2:
    """Quarter turn counterclockwise about the origin."""
    return Point2(-p.y, p.x)


def ref_y_point(p: Point2) -> Point2:
    """Reflection across the y-axis."""
    return Point2(-p.x, p.y)


def transform_region(region: Region, f) -> Region:
    return Region(transform_poly(p, f) for p in region.parts)


def convex_hull(points: Iterable[Point2]) -> ConvexPoly:
    """Monotone-chain hull with exact predicates."""
    pts = sorted(set(points), key=Point2.key)
    if len(pts) < 3:
        return EMPTY_POLY
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return ConvexPoly(lower[:-1] + upper[:-1])


def thicken_horizontal(p: ConvexPoly, eps: RatLike) -> ConvexPoly:
    """Horizontal thickening: hull of the polygon slid by -eps and +eps.

    Equals (up to measure zero) the union of slides by every offset in
    (-eps, eps), and obeys area(result) = area + 2*eps*(vertical extent).
    """
    eps = rat(eps)
    if eps < 0:
        raise ValueError("negative thickening width")
    if eps == 0 or not p:
        return p
    d = Point2(eps, ZERO)
    return convex_hull([v - d for v in p.vertices] + [v + d for v in p.vertices])


# ---------------------------------------------------------------------------
# Union measure: vertical decomposition sweep.
# ---------------------------------------------------------------------------


def _crossing_xs(parts: Sequence[ConvexPoly]) -> set:
    """x-coordinates where edges of distinct parts cross or touch."""
    edges = []
    for idx, part in enumerate(parts):
        for a, b in part.edges():
            if a.x == b.x:
                continue  # vertical edges break at vertex events anyway
            if a.x > b.x:
                a, b = b, a
            slope = (b.y - a.y) / (b.x - a.x)
            intercept = a.y - slope * a.x
            edges.append((a.x, b.x, slope, intercept, idx))
    edges.sort(key=lambda e: (e[0], e[1]))
    xs = set()
    n = len(edges)
    for i in range(n):
        x0a, x1a, sa, ba, ia = edges[i]
        for j in range(i + 1, n):
            x0b, x1b, sb, bb, ib = edges[j]
            if x0b > x1a:
                break
            if ia == ib or sa == sb:
                continue
            xc = (bb - ba) / (sa - sb)
            if max(x0a, x0b) <= xc <= min(x1a, x1b):
                xs.add(xc)
    return xs


def _span_at(part: ConvexPoly, xm: Fraction):
    """[lo, hi] of the part at abscissa xm strictly inside its x-range."""
    lo = hi = None
    for a, b in part.edges():
        if a.x == b.x:
            continue
        if (a.x < xm < b.x) or (b.x < xm < a.x):
            y = a.y + (b.y - a.y) * (xm - a.x) / (b.x - a.x)
            if lo is None or y < lo:
                lo = y
            if hi is None or y > hi:
                hi = y
    if lo is None:
        return None
    return lo, hi


def region_area(region: Region) -> Fraction:
    """Exact Lebesgue measure of the union of the region's parts."""
    parts = list(dict.fromkeys(region.parts))
    if not parts:
        return ZERO
    if len(parts) == 1:
        return parts[0].area
    xs = set()
    for part in parts:
        for v in part.vertices:
            xs.add(v.x)
    xs |= _crossing_xs(parts)
    cuts = sorted(xs)
    total = ZERO
    for i in range(len(cuts) - 1):
        xa, xb = cuts[i], cuts[i + 1]
        xm = (xa + xb) / 2
        spans = []
        for part in parts:
            bb = part.bbox
            if bb[0] < xm < bb[1]:
                span = _span_at(part, xm)
                if span is not None and span[0] < span[1]:
                    spans.append(span)
        if not spans:
            continue
        spans.sort()
        fiber = ZERO
        cur_lo, cur_hi = spans[0]
        for lo, hi in spans[1:]:
            if lo > cur_hi:
                fiber += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
            elif hi > cur_hi:
                cur_hi = hi
        fiber += cur_hi - cur_lo
        total += (xb - xa) * fiber
    return total


def _poly_in_poly(inner: ConvexPoly, outer: ConvexPoly) -> bool:
    return all(outer.contains_point(v) for v in inner.vertices)


def region_subset(a: Region, b: Region) -> bool:
    """True iff the union of ``a`` is inside the union of ``b`` up to measure 0.

    Containment of a convex part in a single convex part is decided by
    vertex tests (exact both ways for closed convex sets); whole-part
    hits against some part of ``b`` give a sufficient fast path, and the
    measure sweep settles everything else.
    """
    if not a:
        return True
    if not b:
        return False
    if all(any(_poly_in_poly(pa, pb) for pb in b.parts) for pa in a.parts):
        return True
    if len(b.parts) == 1:
        return False
    area_b = region_area(b)
    return region_area(Region(a.parts + b.parts)) == area_b


def segment_in_region(p: Point2, q: Point2, region: Region) -> bool:
    """True iff the closed segment pq lies in the closure of the union.

    Decided exactly: the segment is clipped against each convex part in
    parameter space and the resulting closed intervals must cover [0, 1].
    """
    if p == q:
        raise ValueError("degenerate segment")
    intervals = []
    d = q - p
    for part in region.parts:
        t0, t1 = ZERO, ONE
        ok = True
        for a, b in part.edges():
            half = HalfPlane.left_of(a, b)
            f0 = half.value(p)
            slope = half.a * d.x + half.b * d.y
            if slope == 0:
                if f0 > 0:
                    ok = False
                    break
                continue
            t_star = -f0 / slope
            if slope > 0:
                if t_star < t1:
                    t1 = t_star
            else:
                if t_star > t0:
                    t0 = t_star
            if t0 > t1:
                ok = False
                break
        if ok and t0 <= t1:
            intervals.append((t0, t1))
    intervals.sort()
    reach = ZERO
    for t0, t1 in intervals:
        if t0 > reach:
            return False
        if t1 > reach:
            reach = t1
        if reach >= 1:
            return True
    return reach >= 1


# ---------------------------------------------------------------------------
# Fast path: union measure of "bands" lo(x) <= y <= hi(x) over one window.
# ---------------------------------------------------------------------------


def banded_union_area(
    bands: Sequence[tuple],
    denom: int,
    x0: int,
    x1: int,
    y0: int,
    y1: int,
) -> Fraction:
    """Union measure of bands {(x,y): x in [x0,x1], lo(x) <= y <= hi(x)}.

    Each band is (mlo, blo, mhi, bhi) in integers scaled by ``denom``:
    lo(x) = (mlo*x + blo)/denom and hi(x) = (mhi*x + bhi)/denom, clamped
    to the window [x0,x1] x [y0,y1] (window bounds are plain integers).
    The measure integrates exactly over slabs split at all pairwise line
    crossings; inside a slab the vertical order of lines is constant.
    """
    if not bands or x0 >= x1 or y0 >= y1:
        return ZERO
    y0s, y1s = y0 * denom, y1 * denom
    lines = set()
    for mlo, blo, mhi, bhi in bands:
        lines.add((mlo, blo))
        lines.add((mhi, bhi))
    lines.add((0, y0s))
    lines.add((0, y1s))
    lines = sorted(lines)
    xs = {Fraction(x0), Fraction(x1)}
    n = len(lines)
    for i in range(n):
        a1, c1 = lines[i]
        for j in range(i + 1, n):
            a2, c2 = lines[j]
            if a1 == a2:
                continue
            xc = Fraction(c2 - c1, a1 - a2)
            if x0 < xc < x1:
                xs.add(xc)
    cuts = sorted(xs)
    total = ZERO
    for i in range(len(cuts) - 1):
        xa, xb = cuts[i], cuts[i + 1]
        xm = (xa + xb) / 2
        p, q = xm.numerator, xm.denominator
        ylo_s, yhi_s = y0s * q, y1s * q
        spans = []
        for mlo, blo, mhi, bhi in bands:
            lo = mlo * p + blo * q
            if lo < ylo_s:
                lo = ylo_s
            hi = mhi * p + bhi * q
            if hi > yhi_s:
                hi = yhi_s
            if lo < hi:
                spans.append((lo, hi))
        if not spans:
            continue
        spans.sort()
        fiber = 0
        cur_lo, cur_hi = spans[0]
        for lo, hi in spans[1:]:
            if lo > cur_hi:
                fiber += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
            elif hi > cur_hi:
                cur_hi = hi
        fiber += cur_hi - cur_lo
        total += (xb - xa) * Fraction(fiber, denom * q)
    return total
