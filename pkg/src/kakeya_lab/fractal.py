"""Self-similar dust stages, their line sets, and window-area tables.

The dust is the attractor of four contractions of the unit square over
the digit alphabet {0,1,2,3}; the line-set operator sends a parameter
set to the union of the lines y = m*x + b over its points (m, b).
Window areas of translated line-set stages feed the coefficient
machinery of the betting module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from . import caps
from .errors import CapExceeded
from .geometry import (
    EMPTY_REGION,
    AxisBox,
    ConvexPoly,
    HalfPlane,
    Point2,
    Region,
    ZERO,
    ONE,
    banded_union_area,
    clip_convex,
    pt,
    rat,
    ref_y_point,
    rot90_point,
    transform_region,
)

# Vertical digit offsets: digit i shifts by (i, Y_OFFSETS[i]) before the
# 1/4 contraction.  The offsets are a permutation, so stage squares tile
# both coordinate projections.
Y_OFFSETS = (2, 0, 3, 1)

DIGITS = (0, 1, 2, 3)


def contraction(digit: int, p: Point2) -> Point2:
    """Image of a point under the digit's quarter-scale contraction."""
    if digit not in DIGITS:
        raise ValueError(f"digit out of range: {digit!r}")
    return Point2((p.x + digit) / 4, (p.y + Y_OFFSETS[digit]) / 4)


@dataclass(frozen=True)
class Square:
    """Axis-aligned square given by its lower-left corner and side."""

    corner: Point2
    side: Fraction

    def box(self) -> AxisBox:
        return AxisBox(
            self.corner.x,
            self.corner.x + self.side,
            self.corner.y,
            self.corner.y + self.side,
        )

    def poly(self) -> ConvexPoly:
        return self.box().poly()

    def contains_point(self, p: Point2) -> bool:
        return self.box().contains_point(p)


def _check_digits(word: Sequence[int]) -> Tuple[int, ...]:
    word = tuple(int(d) for d in word)
    for d in word:
        if d not in DIGITS:
            raise ValueError(f"digit out of range: {d}")
    return word


def fractal_square(word: Sequence[int]) -> Square:
    """Stage square selected by a digit word (empty word: unit square)."""
    word = _check_digits(word)
    xn = 0
    yn = 0
    for d in word:
        xn = xn * 4 + d
        yn = yn * 4 + Y_OFFSETS[d]
    denom = 4 ** len(word)
    return Square(Point2(Fraction(xn, denom), Fraction(yn, denom)), Fraction(1, denom))


def stage(k: int, cap: int | None = None) -> list:
    """All 4^k stage squares, pairwise nonoverlapping, tiling projections."""
    cap = caps.stage_cap() if cap is None else cap
    if k < 0:
        raise ValueError("stage index must be nonnegative")
    if k > cap:
        raise CapExceeded("stage depth over cap", k=k, cap=cap)
    return [fractal_square(w) for w in itertools.product(DIGITS, repeat=k)]


def slope_to_point(digits: Sequence[int], k: int) -> Point2:
    """Corner parameter point for a base-4 slope prefix at depth k.

    The returned (m, b) is the lower-left corner of the stage-k square
    selected by the first k digits, hence a member of every stage up to k.
    """
    digits = _check_digits(digits)
    if len(digits) < k:
        raise ValueError("need at least k slope digits")
    return fractal_square(digits[:k]).corner


def _rect_intervals(rect) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """(m_lo, m_hi, b_lo, b_hi) of a Square or AxisBox parameter rectangle."""
    if isinstance(rect, Square):
        box = rect.box()
    elif isinstance(rect, AxisBox):
        box = rect
    else:
        raise TypeError("expected Square or AxisBox")
    return box.x0, box.x1, box.y0, box.y1


def _wedge_part(
    m_lo: Fraction,
    m_hi: Fraction,
    b_lo: Fraction,
    b_hi: Fraction,
    window: AxisBox,
) -> ConvexPoly:
    """Line-set slice over a window that stays on one side of x = 0.

    For x >= 0 the slice is {m_lo*x + b_lo <= y <= m_hi*x + b_hi}; for
    x <= 0 the extreme slopes swap roles.
    """
    part = window.poly()
    if not part:
        return part
    if window.x1 <= 0:
        lo_slope, lo_int = m_hi, b_lo
        hi_slope, hi_int = m_lo, b_hi
    else:
        lo_slope, lo_int = m_lo, b_lo
        hi_slope, hi_int = m_hi, b_hi
    part = clip_convex(part, HalfPlane.y_above(lo_slope, lo_int))
    part = clip_convex(part, HalfPlane.y_below(hi_slope, hi_int))
    return part


def line_set_rect(rect, window: AxisBox) -> Region:
    """Line set of a parameter rectangle, clipped to a window.

    Windows straddling x = 0 are split internally, so the result has at
    most two convex parts.
    """
    m_lo, m_hi, b_lo, b_hi = _rect_intervals(rect)
    parts = []
    if window.x0 < 0 < window.x1:
        halves = [
            AxisBox(window.x0, ZERO, window.y0, window.y1),
            AxisBox(ZERO, window.x1, window.y0, window.y1),
        ]
    else:
        halves = [window]
    for half in halves:
        part = _wedge_part(m_lo, m_hi, b_lo, b_hi, half)
        if part:
            parts.append(part)
    return Region(parts)


def _window_for(t: Tuple[int, int]) -> AxisBox:
    t1, t2 = t
    return AxisBox(rat(-t1), rat(1 - t1), rat(-t2), rat(1 - t2))


def line_set_window(t: Tuple[int, int], k: int, cap: int | None = None) -> Region:
    """Unit-square window onto the stage-k line set translated by t.

    Computed square by square in the untranslated frame and shifted back,
    which keeps every clip exact.
    """
    cap = caps.window_cap() if cap is None else cap
    if k > cap:
        raise CapExceeded("window depth over cap", k=k, cap=cap)
    window = _window_for(t)
    parts = []
    for sq in stage(k, cap=max(cap, caps.stage_cap())):
        for part in line_set_rect(sq, window).parts:
            parts.append(part.translate(t[0], t[1]))
    return Region(parts)


_AREA_CACHE: dict = {}


def _window_bands(t: Tuple[int, int], k: int):
    """Integer band forms for the stage-k line set over the window of t.

    Returns (bands, denom, x0, x1, y0, y1) with all entries integers;
    band lo/hi lines are (m*x + b)/denom.  Only usable because integer
    translates never straddle x = 0.
    """
    t1, t2 = t
    x0, x1 = -t1, 1 - t1
    y0, y1 = -t2, 1 - t2
    denom = 4**k
    negative_side = x1 <= 0
    bands = []
    for word in itertools.product(DIGITS, repeat=k):
        xn = 0
        yn = 0
        for d in word:
            xn = xn * 4 + d
            yn = yn * 4 + Y_OFFSETS[d]
        # Parameter rectangle [xn, xn+1] x [yn, yn+1] over denom.
        if negative_side:
            band = (xn + 1, yn, xn, yn + 1)
        else:
            band = (xn, yn, xn + 1, yn + 1)
        mlo, blo, mhi, bhi = band
        # Prune bands that cannot reach the window (linear bounds).
        lo_a = mlo * x0 + blo
        lo_b = mlo * x1 + blo
        hi_a = mhi * x0 + bhi
        hi_b = mhi * x1 + bhi
        if min(lo_a, lo_b) >= y1 * denom or max(hi_a, hi_b) <= y0 * denom:
            continue
        bands.append(band)
    return bands, denom, x0, x1, y0, y1


def window_area(t: Tuple[int, int], k: int, cap: int | None = None) -> Fraction:
    """Exact area of the stage-k line set seen through the window of t."""
    cap = caps.window_cap() if cap is None else cap
    if k > cap:
        raise CapExceeded("window depth over cap", k=k, cap=cap)
    t = (int(t[0]), int(t[1]))
    key = (t, k)
    hit = _AREA_CACHE.get(key)
    if hit is not None:
        return hit
    bands, denom, x0, x1, y0, y1 = _window_bands(t, k)
    value = banded_union_area(bands, denom, x0, x1, y0, y1)
    _AREA_CACHE[key] = value
    return value


def area_drop_stage(t: Tuple[int, int], j: int, cap: int | None = None) -> int:
    """Least stage whose window area is at most 2^-j, within the cap."""
    cap = caps.window_cap() if cap is None else cap
    threshold = Fraction(1, 2**j)
    for k in range(cap + 1):
        if window_area(t, k, cap=cap) <= threshold:
            return k
    raise CapExceeded("area drop not reached within cap", t=t, j=j, cap=cap)


def besicovitch_assembly(k: int, window: AxisBox, cap: int | None = None) -> Region:
    """Stage-k approximation of the four-fold symmetric line-set union.

    The quarter-turn and mirror copies are produced by exact coordinate
    swaps and negations of the untransformed stage computation.
    """
    cap = caps.window_cap() if cap is None else cap
    if k > cap:
        raise CapExceeded("assembly depth over cap", k=k, cap=cap)
    squares = stage(k, cap=max(cap, caps.stage_cap()))

    def clipped_line_set(win: AxisBox) -> Region:
        parts = []
        for sq in squares:
            parts.extend(line_set_rect(sq, win).parts)
        return Region(parts)

    def rot270_box(b: AxisBox) -> AxisBox:
        # Preimage window of a quarter turn: (x, y) -> (y, -x).
        return AxisBox(b.y0, b.y1, -b.x1, -b.x0)

    def ref_y_box(b: AxisBox) -> AxisBox:
        return AxisBox(-b.x1, -b.x0, b.y0, b.y1)

    parts = []
    parts.extend(clipped_line_set(window).parts)
    parts.extend(transform_region(clipped_line_set(rot270_box(window)), rot90_point).parts)
    mirrored = ref_y_box(window)
    parts.extend(transform_region(clipped_line_set(mirrored), ref_y_point).parts)
    parts.extend(
        transform_region(
            transform_region(clipped_line_set(rot270_box(mirrored)), rot90_point),
            ref_y_point,
        ).parts
    )
    return Region(parts)
