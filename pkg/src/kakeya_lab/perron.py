"""Perron trees by sprouting and by base sliding, and the staged Kakeya set.

A tree is grown from a height-normalized triangle by repeatedly
sprouting two shoots from each top vertex, then scaled back so the tree
has the height of the source triangle.  The same set is reproduced by
cutting the triangle's base into equal pieces and sliding each piece
horizontally until its apex sits on one of the tree's top vertices.
Stages of the Kakeya construction cut every triangle of the previous
stage, replace it by a slid-piece tree, and thicken horizontally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import caps
from .errors import CapExceeded
from .geometry import (
    ConvexPoly,
    Point2,
    Region,
    ZERO,
    ONE,
    pt,
    rat,
    region_area,
    region_subset,
    segment_in_region,
    thicken_horizontal,
)
from .martingale import DyadicCube, KakeyaTrunc, OpenSet, cube, mg_value


@dataclass(frozen=True)
class Triangle:
    """Triangle with a horizontal base uv (u left of v) and apex w above."""

    u: Point2
    v: Point2
    w: Point2

    def __post_init__(self):
        if self.u.y != self.v.y:
            raise ValueError("base endpoints must share a y-coordinate")
        if not self.u.x < self.v.x:
            raise ValueError("base endpoints must be ordered left to right")
        if not self.w.y > self.u.y:
            raise ValueError("apex must lie above the base")

    @property
    def height(self) -> Fraction:
        return self.w.y - self.u.y

    @property
    def base_len(self) -> Fraction:
        return self.v.x - self.u.x

    @property
    def area(self) -> Fraction:
        return self.base_len * self.height / 2

    def poly(self) -> ConvexPoly:
        return ConvexPoly([self.u, self.v, self.w])

    def translate(self, dx, dy=0) -> "Triangle":
        d = pt(dx, dy)
        return Triangle(self.u + d, self.v + d, self.w + d)

    def slope_range(self) -> Tuple[Fraction, Fraction]:
        """Covered directions as horizontal-drift-per-unit-rise slopes."""
        h = self.height
        return ((self.w.x - self.v.x) / h, (self.w.x - self.u.x) / h)


def triangle(ux, uy, vx, vy, wx, wy) -> Triangle:
    return Triangle(pt(ux, uy), pt(vx, vy), pt(wx, wy))


def cut_triangle(t: Triangle, pieces: int) -> List[Triangle]:
    """Split the base into equal intervals; pieces share the apex."""
    if pieces < 1:
        raise ValueError("need at least one piece")
    xs = [t.u.x + t.base_len * Fraction(i, pieces) for i in range(pieces + 1)]
    return [
        Triangle(Point2(xs[i], t.u.y), Point2(xs[i + 1], t.u.y), t.w)
        for i in range(pieces)
    ]


@dataclass(frozen=True)
class SproutStage:
    """One sprouting generation; triangles as y-ascending vertex triples."""

    level: int
    triangles: Tuple[Tuple[Point2, Point2, Point2], ...]


def _sprout_triples(u_hat: Point2, v_hat: Point2, w_hat: Point2, k: int):
    """Raw sprouting recursion on the height-2 normalized triangle."""
    stages = [[(u_hat, v_hat, w_hat)]]
    if k >= 1:
        first = [
            ((u_hat + w_hat) / 2, w_hat, (3 * w_hat - v_hat) / 2),
            ((v_hat + w_hat) / 2, w_hat, (3 * w_hat - u_hat) / 2),
        ]
        stages.append(first)
    for _ in range(2, k + 1):
        nxt = []
        for a, b, c in stages[-1]:
            m = (a + c) / 2
            nxt.append((m, c, 2 * c - b))
            nxt.append((b, c, 2 * c - m))
        stages.append(nxt)
    return stages


def sprout(t: Triangle, k: int, cap: int | None = None):
    """Sprouted tree of depth k.

    Returns ``(stages, tree)``: the stage collections and the tree region,
    both in the source triangle's frame.  The construction is run in the
    sheared frame that puts the apex directly above the base midpoint
    (horizontal shear preserves areas, horizontal slides, thickenings and
    the sliding trapezoid, so every quantitative property transfers);
    there the height-2 recursion grows symmetrically, is scaled by
    height/(k+2), and the frame is mapped back.  Without the shear the
    sprouts of a slanted sliver would drift along its edges and leave the
    sliding trapezoid.
    """
    cap = caps.sprout_cap() if cap is None else cap
    if k < 0:
        raise ValueError("sprout depth must be nonnegative")
    if k > cap:
        raise CapExceeded("sprout depth over cap", k=k, cap=cap)
    h = t.height
    mid = Point2((t.u.x + t.v.x) / 2, t.u.y)
    slant = (t.w.x - mid.x) / h  # horizontal drift of the apex per unit rise

    def fwd(p: Point2) -> Point2:
        q = p - mid
        return Point2(q.x - slant * q.y, q.y)

    scale_up = Fraction(2) / h
    u_hat = fwd(t.u) * scale_up
    v_hat = fwd(t.v) * scale_up
    w_hat = fwd(t.w) * scale_up  # lands on (0, 2)
    raw = _sprout_triples(u_hat, v_hat, w_hat, k)
    scale_down = h / (k + 2)

    def back(p: Point2) -> Point2:
        q = p * scale_down
        return Point2(q.x + slant * q.y + mid.x, q.y + mid.y)

    stages = []
    parts = []
    for level, triples in enumerate(raw):
        placed = tuple(
            tuple(sorted((back(a), back(b), back(c)), key=lambda q: (q.y, q.x)))
            for a, b, c in triples
        )
        stages.append(SproutStage(level, placed))
        for triple in placed:
            parts.append(ConvexPoly(triple))
    return stages, Region(parts)


def sprout_tree(t: Triangle, k: int, cap: int | None = None) -> Region:
    return sprout(t, k, cap=cap)[1]


def _apex_level_points(stages: Sequence[SproutStage], t: Triangle, k: int) -> List[Point2]:
    """Top vertices of the deepest stage (they sit at the source height)."""
    top_y = t.w.y
    points = [triple[2] for triple in stages[k].triangles]
    if any(p.y != top_y for p in points):
        raise AssertionError("deepest stage tips must reach the apex height")
    return points


def _wedge_key(top: Point2, others: Sequence[Point2]) -> tuple:
    """Sorted downward edge slopes at a top vertex; exact corner signature."""
    slopes = []
    for o in others:
        if o.y >= top.y:
            raise AssertionError("wedge edges must descend")
        slopes.append((top.x - o.x) / (top.y - o.y))
    return tuple(sorted(slopes))


def shift_construction(t: Triangle, k: int, cap: int | None = None) -> List[Triangle]:
    """The tree as slid base pieces.

    Cuts the triangle into 2^k equal-base pieces and slides each one so
    its apex lands on the tree's matching top vertex; the match pairs the
    exact corner wedge of each piece with the identical wedge of a top
    vertex.  All 2^k top abscissas are used, must be distinct, and the
    pairing must be a bijection.
    """
    cap = caps.sprout_cap() if cap is None else cap
    if k > cap:
        raise CapExceeded("sprout depth over cap", k=k, cap=cap)
    stages, _tree = sprout(t, k, cap=cap)
    pieces = cut_triangle(t, 2**k)
    tips = _apex_level_points(stages, t, k)
    xs = sorted({p.x for p in tips})
    if len(xs) != 2**k:
        raise AssertionError("apex-level abscissas must be distinct")
    tip_by_wedge: Dict[tuple, Point2] = {}
    for triple in stages[k].triangles:
        top = triple[2]
        key = _wedge_key(top, triple[:2])
        if key in tip_by_wedge:
            raise AssertionError("duplicate corner wedge among tree tips")
        tip_by_wedge[key] = top
    shifted = []
    used = set()
    for piece in pieces:
        key = _wedge_key(piece.w, (piece.u, piece.v))
        tip = tip_by_wedge.get(key)
        if tip is None or tip.x in used:
            raise AssertionError("piece wedge must match exactly one tree tip")
        used.add(tip.x)
        shifted.append(piece.translate(tip.x - piece.w.x))
    return shifted


def shift_region(t: Triangle, k: int, cap: int | None = None) -> Region:
    return Region(p.poly() for p in shift_construction(t, k, cap=cap))


def perron_area_check(t: Triangle, k: int, cap: int | None = None):
    """(computed, predicted) tree area; predicted uses the 1/(2k+4) constant.

    The sprouting construction itself yields 2*area/(k+2); the returned
    pair lets callers report the factor-4 gap instead of hiding it.
    """
    computed = region_area(sprout_tree(t, k, cap=cap))
    predicted = t.area / (2 * k + 4)
    return computed, predicted


def containment_trapezoid(t: Triangle) -> ConvexPoly:
    """Trapezoid of all horizontal slides of the triangle by one base length."""
    return ConvexPoly(
        [
            2 * t.u - t.v,
            2 * t.v - t.u,
            t.w + (t.v - t.u),
            t.w - (t.v - t.u),
        ]
    )


def containment_check(t: Triangle, k: int, cap: int | None = None) -> bool:
    return region_subset(sprout_tree(t, k, cap=cap), Region([containment_trapezoid(t)]))


# ---------------------------------------------------------------------------
# Kakeya stages.
# ---------------------------------------------------------------------------

BASE_TRIANGLE = triangle(0, 0, 1, 0, Fraction(1, 2), Fraction(1, 2))


@dataclass(frozen=True)
class KakeyaStage:
    """One stage: triangles, per-tree piece groups, and thickenings."""

    j: int
    p: int
    triangles: Tuple[Triangle, ...]
    piece_groups: Tuple[Tuple[Triangle, ...], ...]  # one group per cut triangle
    cut_triangles: Tuple[Triangle, ...]
    eps: Fraction
    thickened_groups: Tuple[Region, ...]
    region: Region
    thickened: Region


_STAGES: Dict[int, KakeyaStage] = {}


def kakeya_stage(j: int, cap: int | None = None) -> KakeyaStage:
    """Stage j of the shrinking Kakeya construction (desk cap applies)."""
    cap = caps.kakeya_cap() if cap is None else cap
    if j < 0:
        raise ValueError("stage index must be nonnegative")
    if j > cap:
        raise CapExceeded("kakeya stage over cap", j=j, cap=cap)
    hit = _STAGES.get(j)
    if hit is not None:
        return hit
    if j == 0:
        tris = (BASE_TRIANGLE,)
        groups = (tris,)
        cuts = tris
        p = 1
    else:
        prev = kakeya_stage(j - 1, cap=cap)
        cuts_list: List[Triangle] = []
        for tri in prev.triangles:
            cuts_list.extend(cut_triangle(tri, 2 ** (j + 1)))
        cuts = tuple(cuts_list)
        p = len(cuts)
        groups = tuple(
            tuple(shift_construction(tau, 2**j, cap=max(2**j, caps.sprout_cap())))
            for tau in cuts
        )
        tris = tuple(piece for group in groups for piece in group)
    eps = Fraction(1, 2 ** (j + 1) * len(tris))
    thick_groups = tuple(
        Region(thicken_horizontal(piece.poly(), eps) for piece in group)
        for group in groups
    )
    stage_obj = KakeyaStage(
        j=j,
        p=p,
        triangles=tris,
        piece_groups=groups,
        cut_triangles=cuts,
        eps=eps,
        thickened_groups=thick_groups,
        region=Region(tri.poly() for tri in tris),
        thickened=Region(part for g in thick_groups for part in g.parts),
    )
    _STAGES[j] = stage_obj
    return stage_obj


def stage_counts(j: int) -> dict:
    st = kakeya_stage(j)
    return {"j": j, "p": st.p, "triangles": len(st.triangles), "eps": st.eps}


def nesting_check(j: int, cap: int | None = None) -> bool:
    """Exact measure-level check that stage j+1's thickening sits in stage j's.

    Decomposed over the finite union: containment holds iff every
    thickened piece group of stage j+1 is contained in stage j's
    thickening.  Each group is first chased along the chain
    group <= eps_j-thickened cut triangle <= eps_j-thickened parent
    triangle (both targets convex, so the tests are exact vertex
    checks); a group failing the chain falls back to the measure sweep.
    """
    inner = kakeya_stage(j + 1, cap=cap)
    outer = kakeya_stage(j, cap=cap)
    pieces_per_parent = 2 ** (j + 2)
    for idx, group in enumerate(inner.thickened_groups):
        tau = inner.cut_triangles[idx]
        parent = outer.triangles[idx // pieces_per_parent]
        waypoint = Region([thicken_horizontal(tau.poly(), outer.eps)])
        target = Region([thicken_horizontal(parent.poly(), outer.eps)])
        if region_subset(group, waypoint) and region_subset(waypoint, target):
            continue
        if not region_subset(group, outer.thickened):
            return False
    return True


def per_piece_nesting_check(j: int, index: int, cap: int | None = None) -> bool:
    """One link of the nesting chain: a thickened slid-piece tree of stage
    j+1 sits inside the eps_j-thickening of its own cut triangle."""
    inner = kakeya_stage(j + 1, cap=cap)
    outer_eps = kakeya_stage(j, cap=cap).eps
    tau = inner.cut_triangles[index]
    target = Region([thicken_horizontal(tau.poly(), outer_eps)])
    return region_subset(inner.thickened_groups[index], target)


def area_bound_check(j: int, index: int, cap: int | None = None):
    """(computed, bound): thickened-group area against 1/(2^j * p_j)."""
    st = kakeya_stage(j, cap=cap)
    computed = region_area(st.thickened_groups[index])
    bound = Fraction(1, 2**j * st.p)
    return computed, bound


def piece_area_check(j: int, index: int, cap: int | None = None):
    """(computed, predicted) slid-tree area; predicted uses 1/(2*2^j+4)."""
    st = kakeya_stage(j, cap=cap)
    computed = region_area(Region(p.poly() for p in st.piece_groups[index]))
    predicted = st.cut_triangles[index].area / (2 * 2**j + 4)
    return computed, predicted


# ---------------------------------------------------------------------------
# The staged betting series.
# ---------------------------------------------------------------------------

_KAKEYA_SPECS: Dict[Tuple[int, int], OpenSet] = {}


def _group_spec(j: int, index: int) -> OpenSet:
    key = (j, index)
    hit = _KAKEYA_SPECS.get(key)
    if hit is None:
        st = kakeya_stage(j)
        region = st.thickened_groups[index]
        hit = OpenSet(region, region_area(region))
        _KAKEYA_SPECS[key] = hit
    return hit


def kakeya_trunc_value(j_max: int, q: DyadicCube) -> Fraction:
    """Value of the truncated stage series on one cube."""
    if j_max > caps.kakeya_cap():
        raise CapExceeded("kakeya truncation over stage cap", j_max=j_max, cap=caps.kakeya_cap())
    total = ZERO
    for j in range(j_max + 1):
        st = kakeya_stage(j)
        weight = Fraction(1, 2**j * st.p)
        for i in range(st.p):
            total += weight * mg_value(_group_spec(j, i), q)
    return total


def kakeya_mg_hat(s: int, r: int, u: Sequence[int]) -> Fraction:
    """Approximator keyed to accuracy 2^-s at level r (depth 2r+s)."""
    j_max = 2 * r + s
    return mg_value(KakeyaTrunc(j_max), cube(2, r, u))


def kakeya_refinement_bound(j_small: int, r: int) -> Fraction:
    """Certified gap between truncations of depths >= j_small at level r."""
    return Fraction(4**r) * Fraction(1, 2**j_small)


# ---------------------------------------------------------------------------
# Direction certificates.
# ---------------------------------------------------------------------------


def direction_segment(slope: Fraction, j: int, cap: int | None = None):
    """Segment witness for one direction inside the stage-j thickening.

    ``slope`` is horizontal drift per unit rise (0 is vertical; the base
    stage covers [-1, 1]).  Returns exact endpoints of a base-to-apex
    segment of length at least 1/3 verified inside the closed thickened
    stage, or None when the direction is outside stage coverage.
    """
    slope = rat(slope)
    st = kakeya_stage(j, cap=cap)
    for tri in st.triangles:
        lo, hi = tri.slope_range()
        if lo <= slope <= hi:
            foot = Point2(tri.w.x - slope * tri.height, tri.u.y)
            if segment_in_region(foot, tri.w, st.thickened):
                return foot, tri.w
    return None
