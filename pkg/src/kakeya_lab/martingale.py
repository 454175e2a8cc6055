"""Dyadic cubes and exact martingale evaluation.

A martingale here is a nonnegative function on dyadic cubes whose value
at a cube equals the average over its 2^n children.  Specs are closed
immutable descriptions (open-set, y-axis column, truncated series,
weighted sums, coordinate lifts, dihedral transforms); evaluation is
exact rational arithmetic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from . import caps, fractal
from .errors import CapExceeded
from .geometry import (
    AxisBox,
    Point2,
    Region,
    ZERO,
    ONE,
    clip_to_box,
    rat,
    region_area,
)


@dataclass(frozen=True)
class DyadicCube:
    """Half-open cube of side 2^-r at integer index u inside [0,1)^n."""

    n: int
    r: int
    u: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.r < 0 or len(self.u) != self.n:
            raise ValueError("malformed dyadic cube")
        top = 1 << self.r
        if any(not (0 <= ui < top) for ui in self.u):
            raise ValueError("cube index outside the unit cube")

    def children(self) -> list:
        kids = []
        for bits in range(1 << self.n):
            idx = tuple(2 * self.u[i] + ((bits >> i) & 1) for i in range(self.n))
            kids.append(DyadicCube(self.n, self.r + 1, idx))
        return kids

    def parent(self) -> "DyadicCube":
        if self.r == 0:
            raise ValueError("root cube has no parent")
        return DyadicCube(self.n, self.r - 1, tuple(ui // 2 for ui in self.u))

    def box2d(self) -> AxisBox:
        if self.n != 2:
            raise ValueError("box2d needs a planar cube")
        s = Fraction(1, 1 << self.r)
        return AxisBox(self.u[0] * s, (self.u[0] + 1) * s, self.u[1] * s, (self.u[1] + 1) * s)


def cube(n: int, r: int, u: Sequence[int]) -> DyadicCube:
    return DyadicCube(n, r, tuple(int(x) for x in u))


def locate(x: Sequence, r: int) -> DyadicCube:
    """The level-r cube containing a point of [0,1)^n."""
    coords = [rat(c) for c in x]
    for c in coords:
        if not (0 <= c < 1):
            raise ValueError("point outside [0,1)^n")
    scale = 1 << r
    return DyadicCube(len(coords), r, tuple(int(c * scale) for c in coords))


def children(q: DyadicCube) -> list:
    return q.children()


# ---------------------------------------------------------------------------
# Martingale specs.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpenSet:
    """Bets proportionally on overlap with a fixed positive-measure set.

    ``total_mass`` defaults to the exact area of the whole region; cube
    overlaps are always taken inside the unit square, so a region poking
    outside contributes capital below 1 at the root.
    """

    region: Region
    total_mass: Fraction = None  # type: ignore[assignment]
    n: int = 2

    def __post_init__(self):
        mass = self.total_mass
        if mass is None:
            mass = region_area(self.region)
        object.__setattr__(self, "total_mass", rat(mass))
        if self.total_mass <= 0:
            raise ValueError("open-set martingale needs positive mass")
        if self.n != 2:
            raise ValueError("open-set martingale is planar; lift for higher dims")


@dataclass(frozen=True)
class YAxis:
    """Doubles on the leftmost column of cubes, zero elsewhere."""

    n: int = 2


@dataclass(frozen=True)
class BesicovitchTrunc:
    """Finite truncation of the translated line-set betting series.

    Sums the y-axis martingale plus coefficient-weighted open-set
    martingales over the index box |t1|,|t2| <= p, j <= p.  Coefficient
    searches run under ``k_cap``; an unreachable search raises
    :class:`CapExceeded` rather than silently shrinking the box.
    """

    p: int
    k_cap: int = caps.DEFAULT_WINDOW_CAP
    n: int = 2


@dataclass(frozen=True)
class KakeyaTrunc:
    """Finite truncation of the thickened-stage betting series."""

    j_max: int
    n: int = 2


@dataclass(frozen=True)
class WeightedSum:
    """Nonnegative combination of other specs over a common dimension."""

    n: int
    terms: Tuple[Tuple[Fraction, object], ...]

    def __post_init__(self):
        for coeff, spec in self.terms:
            if rat(coeff) < 0:
                raise ValueError("weighted sum needs nonnegative coefficients")
            if spec_dim(spec) != self.n:
                raise ValueError("weighted sum term dimension mismatch")


@dataclass(frozen=True)
class ProductLift:
    """Reads a lower-dimensional spec through selected coordinates."""

    n: int
    dims: Tuple[int, ...]
    factor: object

    def __post_init__(self):
        if any(not (0 <= d < self.n) for d in self.dims):
            raise ValueError("lift coordinates out of range")
        if len(set(self.dims)) != len(self.dims):
            raise ValueError("lift coordinates must be distinct")
        if spec_dim(self.factor) != len(self.dims):
            raise ValueError("lift factor dimension mismatch")


DIHEDRAL = (
    "identity",
    "rot90",
    "rot180",
    "rot270",
    "ref_y",
    "ref_x",
    "ref_diag",
    "ref_antidiag",
)


@dataclass(frozen=True)
class SymmetryXform:
    """Evaluates a planar spec at the preimage cube of a square symmetry."""

    g: str
    base: object
    n: int = 2

    def __post_init__(self):
        if self.g not in DIHEDRAL:
            raise ValueError(f"unknown symmetry {self.g!r}")
        if spec_dim(self.base) != 2:
            raise ValueError("symmetry transforms act on planar specs")


def spec_dim(spec) -> int:
    return spec.n


def _inverse_index(g: str, r: int, u: Tuple[int, int]) -> Tuple[int, int]:
    """Index of the cube mapped onto Q_r(u) by the symmetry g."""
    top = (1 << r) - 1
    x, y = u
    if g == "identity":
        return (x, y)
    if g == "rot90":  # g: (x,y) -> (top-y, x); inverse: (y, top-x)
        return (y, top - x)
    if g == "rot180":
        return (top - x, top - y)
    if g == "rot270":
        return (top - y, x)
    if g == "ref_y":
        return (top - x, y)
    if g == "ref_x":
        return (x, top - y)
    if g == "ref_diag":  # reflection across y = x
        return (y, x)
    if g == "ref_antidiag":
        return (top - y, top - x)
    raise ValueError(g)


# ---------------------------------------------------------------------------
# Open-set cell cache: clip regions down the quadtree once per spec.
# ---------------------------------------------------------------------------

_CELLS: Dict[OpenSet, Dict[Tuple[int, Tuple[int, int]], Tuple[Region, Fraction]]] = {}


def _openset_cell(spec: OpenSet, q: DyadicCube) -> Fraction:
    """m(G intersect cube), clipped progressively down the quadtree."""
    cells = _CELLS.setdefault(spec, {})
    key = (q.r, q.u)
    hit = cells.get(key)
    if hit is not None:
        return hit[1]
    if q.r == 0:
        clipped = clip_to_box(spec.region, q.box2d())
    else:
        parent = q.parent()
        parent_region, parent_area = _openset_entry(spec, parent)
        if parent_area == 0:
            clipped = Region()
        else:
            clipped = clip_to_box(parent_region, q.box2d())
    area = region_area(clipped)
    cells[key] = (clipped, area)
    return area


def _openset_entry(spec: OpenSet, q: DyadicCube):
    cells = _CELLS.setdefault(spec, {})
    key = (q.r, q.u)
    if key not in cells:
        _openset_cell(spec, q)
    return cells[key]


# ---------------------------------------------------------------------------
# Besicovitch coefficient machinery.
# ---------------------------------------------------------------------------

_UNIT_REGION = Region([AxisBox.unit().poly()])


def coefficient_select(t: Tuple[int, int], j: int, k_cap: int | None = None):
    """Betting set and coefficient for one translate/index pair.

    Returns ``(region, coeff)``: the translated line-set window at the
    area-drop stage when that window is nonempty, else the unit square
    with the geometric fallback coefficient.  Propagates
    :class:`CapExceeded` (annotated with the offending pair) when the
    drop stage is out of reach.
    """
    k_cap = caps.window_cap() if k_cap is None else k_cap
    t = (int(t[0]), int(t[1]))
    weight = abs(t[0]) + abs(t[1]) + j
    try:
        k_star = fractal.area_drop_stage(t, weight, cap=k_cap)
    except CapExceeded as exc:
        raise CapExceeded(
            "coefficient search over cap", t=t, j=j, weight=weight, cap=k_cap
        ) from exc
    area = fractal.window_area(t, k_star, cap=k_cap)
    if area > 0:
        return fractal.line_set_window(t, k_star, cap=k_cap), area
    return _UNIT_REGION, Fraction(1, 2**weight)


_BESI_TERMS: Dict[Tuple[int, int], tuple] = {}


def _besicovitch_terms(p: int, k_cap: int):
    key = (p, k_cap)
    hit = _BESI_TERMS.get(key)
    if hit is not None:
        return hit
    terms = []
    for t1 in range(-p, p + 1):
        for t2 in range(-p, p + 1):
            for j in range(p + 1):
                region, coeff = coefficient_select((t1, t2), j, k_cap=k_cap)
                if region is _UNIT_REGION:
                    terms.append((coeff, None))
                else:
                    terms.append((coeff, OpenSet(region, coeff)))
    result = tuple(terms)
    _BESI_TERMS[key] = result
    return result


def _besicovitch_value(spec: BesicovitchTrunc, q: DyadicCube) -> Fraction:
    total = mg_value(YAxis(), q)
    for coeff, term_spec in _besicovitch_terms(spec.p, spec.k_cap):
        if term_spec is None:
            total += coeff  # unit-square bettor pays 1 on every cube
        else:
            total += coeff * mg_value(term_spec, q)
    return total


def besicovitch_hat(s: int, r: int, u: Sequence[int], k_cap: int | None = None) -> Fraction:
    """Truncation keyed to accuracy 2^-s at level r (radius p = s+2r+6).

    At desk-scale caps the inner coefficient searches are typically out
    of reach; the resulting :class:`CapExceeded` carries the offending
    translate/index pair.
    """
    k_cap = caps.window_cap() if k_cap is None else k_cap
    p = s + 2 * r + 6
    return mg_value(BesicovitchTrunc(p, k_cap), cube(2, r, u))


def besicovitch_trunc_value(p: int, r: int, u: Sequence[int], k_cap: int | None = None) -> Fraction:
    """Evaluate the radius-p truncation directly (chosen-radius form)."""
    k_cap = caps.window_cap() if k_cap is None else k_cap
    return mg_value(BesicovitchTrunc(p, k_cap), cube(2, r, u))


def tail_sums(p: int) -> dict:
    """Exact geometric tails outside the radius-p index box.

    Closed forms: sum over |t1| > p equals 2*2^-p, a two-sided absolute
    sum equals 3, the j-tail equals 2^-p, the full j-sum equals 2.
    """
    p = int(p)
    two_sided = Fraction(3)
    j_all = Fraction(2)
    t_tail = Fraction(2, 2**p)
    j_tail = Fraction(1, 2**p)
    tau_t1 = t_tail * two_sided * j_all  # 12 * 2^-p
    tau_j = two_sided * two_sided * j_tail  # 9 * 2^-p
    return {
        "tau_t1": tau_t1,
        "tau_t2": tau_t1,
        "tau_j": tau_j,
        "tau_box_complement_bound": 2 * tau_t1 + tau_j,  # 33 * 2^-p
        "tau_total": two_sided * two_sided * j_all,  # 18
    }


def approx_error_budget(s: int, r: int) -> Fraction:
    """Certified gap between the radius-(s+2r+6) truncation and the full series."""
    p = s + 2 * r + 6
    return Fraction(4**r) * tail_sums(p)["tau_box_complement_bound"]


def trunc_refinement_bound(p_small: int, r: int) -> Fraction:
    """Certified gap between any two truncations with radii >= p_small."""
    return Fraction(4**r) * tail_sums(p_small)["tau_box_complement_bound"]


# ---------------------------------------------------------------------------
# Evaluation, fairness, traces.
# ---------------------------------------------------------------------------


def mg_value(spec, q: DyadicCube) -> Fraction:
    """Exact capital of a spec on a dyadic cube."""
    if spec_dim(spec) != q.n:
        raise ValueError("cube dimension does not match the spec")
    if isinstance(spec, OpenSet):
        area = _openset_cell(spec, q)
        return Fraction(4**q.r) * area / spec.total_mass
    if isinstance(spec, YAxis):
        return Fraction(2**q.r) if q.u[0] == 0 else ZERO
    if isinstance(spec, WeightedSum):
        total = ZERO
        for coeff, sub in spec.terms:
            total += rat(coeff) * mg_value(sub, q)
        return total
    if isinstance(spec, ProductLift):
        sub = DyadicCube(len(spec.dims), q.r, tuple(q.u[d] for d in spec.dims))
        return mg_value(spec.factor, sub)
    if isinstance(spec, SymmetryXform):
        pre = DyadicCube(2, q.r, _inverse_index(spec.g, q.r, q.u))
        return mg_value(spec.base, pre)
    if isinstance(spec, BesicovitchTrunc):
        return _besicovitch_value(spec, q)
    if isinstance(spec, KakeyaTrunc):
        from . import perron

        return perron.kakeya_trunc_value(spec.j_max, q)
    raise TypeError(f"unknown martingale spec {type(spec).__name__}")


def fairness_residual(spec, q: DyadicCube) -> Fraction:
    """Value minus the average over children; zero for a fair bettor."""
    kid_sum = sum((mg_value(spec, kid) for kid in q.children()), start=ZERO)
    return mg_value(spec, q) - Fraction(1, 2**q.n) * kid_sum


@dataclass(frozen=True)
class CapitalTrace:
    point: Tuple[Fraction, ...]
    entries: Tuple[Tuple[int, Fraction], ...]

    def values(self) -> list:
        return [v for _, v in self.entries]

    def first_crossing(self, threshold) -> int | None:
        threshold = rat(threshold)
        for r, v in self.entries:
            if v >= threshold:
                return r
        return None


def trace(spec, x: Sequence, r_max: int) -> CapitalTrace:
    """Capital along the cubes of a point for levels 0..r_max."""
    point = tuple(rat(c) for c in x)
    entries = []
    for r in range(r_max + 1):
        q = locate(point, r)
        entries.append((r, mg_value(spec, q)))
    return CapitalTrace(point, tuple(entries))


def product_lift(m1, m2):
    """Additive lift of two specs onto their product dimension."""
    n1, n2 = spec_dim(m1), spec_dim(m2)
    n = n1 + n2
    return WeightedSum(
        n,
        (
            (ONE, ProductLift(n, tuple(range(n1)), m1)),
            (ONE, ProductLift(n, tuple(range(n1, n)), m2)),
        ),
    )


def symmetry_xform(spec, g: str) -> SymmetryXform:
    return SymmetryXform(g, spec)


def zero_martingale(n: int) -> WeightedSum:
    return WeightedSum(n, ())
