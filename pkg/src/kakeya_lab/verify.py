"""Verification suites: one runner per acceptance criterion.

Each criterion function returns granular check results; the suite
runner aggregates them into a report.  Checks either hold exactly
(tolerance zero unless a bound is itself the claim), fail with the
exact discrepancy recorded, or are skipped with the budget cause.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from . import caps, fractal, perron
from .errors import CapExceeded
from .geometry import (
    AxisBox,
    ConvexPoly,
    Point2,
    Region,
    pt,
    rat,
    region_area,
    region_subset,
    segment_in_region,
)
from .martingale import (
    BesicovitchTrunc,
    DyadicCube,
    KakeyaTrunc,
    OpenSet,
    SymmetryXform,
    WeightedSum,
    YAxis,
    approx_error_budget,
    besicovitch_hat,
    coefficient_select,
    cube,
    fairness_residual,
    locate,
    mg_value,
    product_lift,
    tail_sums,
    trace,
    zero_martingale,
)


@dataclass
class CheckResult:
    check_id: str
    status: str  # "pass" | "fail" | "skip"
    expected: str
    actual: str
    elapsed_ms: int
    note: str = ""


@dataclass
class VerificationReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)


def _result(check_id, ok, expected, actual, t0, note="") -> CheckResult:
    return CheckResult(
        check_id=check_id,
        status="pass" if ok else "fail",
        expected=str(expected),
        actual=str(actual),
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        note=note,
    )


def _skip(check_id, expected, cause, t0) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        status="skip",
        expected=str(expected),
        actual="(not evaluated)",
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        note=cause,
    )


# ---------------------------------------------------------------------------
# Deterministic corpus of betting sets with interior certificates.
# ---------------------------------------------------------------------------


def _box_region(x0, x1, y0, y1) -> Region:
    return Region([AxisBox.of(x0, x1, y0, y1).poly()])


def fairness_regions() -> List[tuple]:
    """(name, region, interior point, eps exponent) quadruples.

    Every region is inside the unit square; the point carries an
    explicit sup-norm box certificate [x-2^-g, x+2^-g]^2 inside the
    region, which the criteria re-verify exactly before use.
    """
    third = Fraction(1, 3)
    f = Fraction
    hexagon = ConvexPoly(
        [
            pt(f(1, 4), f(1, 8)),
            pt(f(3, 4), f(1, 8)),
            pt(f(7, 8), f(1, 2)),
            pt(f(3, 4), f(7, 8)),
            pt(f(1, 4), f(7, 8)),
            pt(f(1, 8), f(1, 2)),
        ]
    )
    band = AxisBox.unit().poly()
    from .geometry import HalfPlane, clip_convex

    band = clip_convex(band, HalfPlane.y_below(f(1), f(1, 8)))
    band = clip_convex(band, HalfPlane.y_above(f(1), f(-1, 8)))
    corpus = [
        ("unit-square", _box_region(0, 1, 0, 1), (third, f(1, 2)), 2),
        ("left-half", _box_region(0, f(1, 2), 0, 1), (f(1, 4), f(1, 2)), 3),
        ("thirds-box", _box_region(third, f(5, 6), f(1, 6), f(2, 3)), (f(1, 2), third), 4),
        (
            "right-triangle",
            Region([ConvexPoly([pt(0, 0), pt(1, 0), pt(0, 1)])]),
            (f(1, 4), f(1, 4)),
            3,
        ),
        (
            "sevenths-triangle",
            Region([ConvexPoly([pt(f(1, 7), f(1, 7)), pt(f(6, 7), f(2, 7)), pt(f(3, 7), f(6, 7))])]),
            (f(10, 21), f(3, 7)),
            5,
        ),
        (
            "disjoint-boxes",
            Region(
                [
                    AxisBox.of(0, f(1, 4), 0, f(1, 4)).poly(),
                    AxisBox.of(f(1, 2), f(3, 4), f(1, 2), f(3, 4)).poly(),
                ]
            ),
            (f(1, 8), f(1, 8)),
            4,
        ),
        (
            "overlapping-boxes",
            Region(
                [
                    AxisBox.of(0, f(1, 2), 0, f(1, 2)).poly(),
                    AxisBox.of(f(1, 4), f(3, 4), f(1, 4), f(3, 4)).poly(),
                ]
            ),
            (f(3, 8), f(3, 8)),
            3,
        ),
        ("hexagon", Region([hexagon]), (f(1, 2), f(1, 2)), 2),
        ("line-set-window", fractal.line_set_window((0, 0), 1), (f(1, 8), f(1, 8)), 6),
        ("diagonal-band", Region([band]), (f(1, 2), f(1, 2)), 5),
    ]
    return corpus


def _all_squares(r_max: int) -> List[DyadicCube]:
    out = []
    for r in range(r_max + 1):
        for u1 in range(1 << r):
            for u2 in range(1 << r):
                out.append(cube(2, r, (u1, u2)))
    return out


def _sampled_cubes3(r_max: int) -> List[DyadicCube]:
    out = []
    for r in range(r_max + 1):
        top = 1 << r
        step = max(1, top // 2)
        picks = set()
        for u1 in range(0, top, step):
            for u2 in range(0, top, step):
                for u3 in range(0, top, step):
                    picks.add((u1, u2, u3))
        picks.add((top - 1, top - 1, top - 1))
        for u in sorted(picks):
            out.append(cube(3, r, u))
    return out


# ---------------------------------------------------------------------------
# Criterion 1: exact fairness.
# ---------------------------------------------------------------------------


def criterion_1_fairness(opts: dict) -> List[CheckResult]:
    results = []
    cubes2 = _all_squares(4)
    corpus = fairness_regions()

    def fair_over(name, spec, cubes):
        t0 = time.monotonic()
        bad = 0
        worst = Fraction(0)
        for q in cubes:
            res = fairness_residual(spec, q)
            if res != 0:
                bad += 1
                worst = max(worst, abs(res))
        results.append(
            _result(
                f"01-fairness-{name}",
                bad == 0,
                "residual 0 on all cubes",
                f"{bad} nonzero (worst {worst})" if bad else "residual 0 on all cubes",
                t0,
                note=f"{len(cubes)} cubes",
            )
        )

    for name, region, _pt, _g in corpus:
        fair_over(f"open-set-{name}", OpenSet(region), cubes2)
    fair_over("y-axis", YAxis(), cubes2)
    base_open = OpenSet(corpus[6][1])
    for g in ("rot90", "ref_y", "ref_diag"):
        fair_over(f"sym-{g}-y-axis", SymmetryXform(g, YAxis()), cubes2)
    fair_over("sym-rot270-open-set", SymmetryXform("rot270", base_open), cubes2)
    fair_over("besicovitch-trunc-p0", BesicovitchTrunc(0, opts.get("k_max", caps.window_cap())), cubes2)
    fair_over("kakeya-trunc-j1", KakeyaTrunc(1), cubes2)
    if opts.get("j_max", caps.kakeya_cap()) >= 2:
        fair_over("kakeya-trunc-j2", KakeyaTrunc(2), cubes2)
    cubes3 = _sampled_cubes3(3)
    lift = product_lift(YAxis(), zero_martingale(1))
    fair_over("product-lift-n3", lift, cubes3)
    lift2 = product_lift(base_open, zero_martingale(1))
    fair_over("product-lift-open-n3", lift2, cubes3)
    return results


# ---------------------------------------------------------------------------
# Criterion 2: open-set capital stabilizes at the reciprocal mass.
# ---------------------------------------------------------------------------


def criterion_2_stabilization(opts: dict) -> List[CheckResult]:
    results = []
    for name, region, point, g in fairness_regions():
        t0 = time.monotonic()
        eps = Fraction(1, 2**g)
        x, y = point
        box = _box_region(x - eps, x + eps, y - eps, y + eps)
        if not region_subset(box, region):
            results.append(
                _result(f"02-certificate-{name}", False, "certificate box inside region", "outside", t0)
            )
            continue
        spec = OpenSet(region)
        target = 1 / spec.total_mass
        tr = trace(spec, (x, y), g + 4)
        tail = [v for r, v in tr.entries if r >= g + 1]
        ok = all(v == target for v in tail)
        results.append(
            _result(
                f"02-stabilize-{name}",
                ok,
                f"capital {target} for levels > {g}",
                "exact" if ok else f"tail {tail}",
                t0,
            )
        )
    return results


# ---------------------------------------------------------------------------
# Criteria 3-5: tree area law, construction equivalence, trapezoid containment.
# ---------------------------------------------------------------------------

SCALENE = perron.triangle(0, 0, 1, 0, Fraction(1, 4), Fraction(3, 4))


def criterion_3_area_law(opts: dict) -> List[CheckResult]:
    results = []
    for label, tri in (("unit", perron.BASE_TRIANGLE), ("scalene", SCALENE)):
        t0 = time.monotonic()
        computed0, predicted0 = perron.perron_area_check(tri, 0)
        results.append(
            _result(
                f"03-depth0-discrepancy-{label}",
                computed0 == tri.area and predicted0 == tri.area / 4,
                f"computed {tri.area}, stated constant gives {tri.area / 4}",
                f"computed {computed0}, stated constant gives {predicted0}",
                t0,
                note="depth-0 tree is the triangle itself; gap reported as documented",
            )
        )
        for k in range(1, 5):
            t0 = time.monotonic()
            computed, predicted = perron.perron_area_check(tri, k)
            results.append(
                _result(
                    f"03-area-equality-{label}-k{k}",
                    computed == predicted,
                    f"{predicted}",
                    f"{computed} (ratio {computed / predicted})",
                    t0,
                    note="stated constant 1/(2k+4); the sprouting construction yields 2/(k+2), a constant factor 4 above it",
                )
            )
            t0 = time.monotonic()
            law = 2 * tri.area / (k + 2)
            results.append(
                _result(
                    f"03-construction-law-{label}-k{k}",
                    computed == law,
                    f"{law}",
                    f"{computed}",
                    t0,
                    note="construction-law regression pin: area = 2*area(triangle)/(k+2) exactly",
                )
            )
    return results


def criterion_4_equivalence(opts: dict) -> List[CheckResult]:
    results = []
    for label, tri in (("unit", perron.BASE_TRIANGLE), ("scalene", SCALENE)):
        for k in range(4):
            t0 = time.monotonic()
            tree = perron.sprout_tree(tri, k)
            shift = perron.shift_region(tri, k)
            ok = (
                region_area(tree) == region_area(shift)
                and region_subset(shift, tree)
                and region_subset(tree, shift)
            )
            results.append(
                _result(
                    f"04-sprout-shift-{label}-k{k}",
                    ok,
                    "symmetric difference of measure 0",
                    "exact match" if ok else "mismatch",
                    t0,
                    note="index reading: all 2^k slid pieces, one per apex-level abscissa",
                )
            )
    return results


def criterion_5_containment(opts: dict) -> List[CheckResult]:
    results = []
    sliver = perron.triangle(0, 0, Fraction(1, 32), 0, Fraction(1, 2), Fraction(1, 2))
    for label, tri in (("unit", perron.BASE_TRIANGLE), ("scalene", SCALENE), ("sliver", sliver)):
        for k in range(4):
            t0 = time.monotonic()
            ok = perron.containment_check(tri, k)
            results.append(
                _result(
                    f"05-trapezoid-{label}-k{k}",
                    ok,
                    "tree inside sliding trapezoid",
                    "inside" if ok else "escapes",
                    t0,
                )
            )
    return results


# ---------------------------------------------------------------------------
# Criterion 6: stage thickening nesting.
# ---------------------------------------------------------------------------


def criterion_6_nesting(opts: dict) -> List[CheckResult]:
    results = []
    j_hi = min(opts.get("j_max", caps.kakeya_cap()), caps.kakeya_cap())
    for j in range(min(j_hi, 2)):
        t0 = time.monotonic()
        ok = perron.nesting_check(j)
        results.append(
            _result(
                f"06-nesting-{j + 1}-in-{j}",
                ok,
                "stage thickening nested",
                "nested" if ok else "not nested",
                t0,
            )
        )
    if j_hi >= 2:
        t0 = time.monotonic()
        sample = list(range(0, 128, 4))
        ok = all(perron.per_piece_nesting_check(1, i) for i in sample)
        results.append(
            _result(
                "06-per-piece-chain-boundary",
                ok,
                "thickened slid-piece trees inside parent-triangle thickenings",
                "all hold" if ok else "violated",
                t0,
                note=f"{len(sample)}-piece sample at the deepest boundary",
            )
        )
    return results


# ---------------------------------------------------------------------------
# Criterion 7: stage area bounds.
# ---------------------------------------------------------------------------


def criterion_7_area_bounds(opts: dict) -> List[CheckResult]:
    results = []
    for j in (0, 1):
        t0 = time.monotonic()
        st = perron.kakeya_stage(j)
        checks = [perron.area_bound_check(j, i) for i in range(st.p)]
        ok = all(c < b for c, b in checks)
        worst = max((c / b for c, b in checks))
        results.append(
            _result(
                f"07-thickened-bound-j{j}",
                ok,
                "strict bound at every index",
                f"worst ratio {worst}",
                t0,
            )
        )
    if opts.get("j_max", caps.kakeya_cap()) >= 2:
        t0 = time.monotonic()
        sample = list(range(0, 128, 4))
        checks = [perron.area_bound_check(2, i) for i in sample]
        ok = all(c < b for c, b in checks)
        worst = max((c / b for c, b in checks))
        results.append(
            _result(
                "07-thickened-bound-j2-sample",
                ok,
                "strict bound on 32 sampled indices",
                f"worst ratio {worst}",
                t0,
            )
        )
    for j in (1, 2):
        if j > opts.get("j_max", caps.kakeya_cap()):
            continue
        t0 = time.monotonic()
        computed, predicted = perron.piece_area_check(j, 0)
        results.append(
            _result(
                f"07-piece-area-equality-j{j}",
                computed == predicted,
                f"{predicted}",
                f"{computed} (ratio {computed / predicted})",
                t0,
                note="stated constant 1/(2*2^j+4); construction yields the factor-4 larger classical value",
            )
        )
        t0 = time.monotonic()
        st = perron.kakeya_stage(j)
        law = 2 * st.cut_triangles[0].area / (2**j + 2)
        results.append(
            _result(
                f"07-piece-area-law-j{j}",
                computed == law,
                f"{law}",
                f"{computed}",
                t0,
                note="construction-law regression pin",
            )
        )
    return results


# ---------------------------------------------------------------------------
# Criterion 8: truncation error accounting.
# ---------------------------------------------------------------------------


def _error_samples() -> List[tuple]:
    samples = []
    for s in range(7):
        for r in (0, 1, 3):
            u = (0, (1 << r) - 1)
            samples.append((s, r, u))
    return samples[:20]


def criterion_8_besicovitch_error(opts: dict) -> List[CheckResult]:
    results = []
    k_cap = opts.get("k_max", caps.window_cap())

    t0 = time.monotonic()
    ok = True
    for p in (3, 6, 9, 14, 20):
        tails = tail_sums(p)
        ok &= tails["tau_t1"] == Fraction(12, 2**p)
        ok &= tails["tau_t2"] == Fraction(12, 2**p)
        ok &= tails["tau_j"] == Fraction(9, 2**p)
        ok &= tails["tau_box_complement_bound"] == Fraction(33, 2**p)
    results.append(
        _result(
            "08-tail-identities",
            ok,
            "12*2^-p, 12*2^-p, 9*2^-p, 33*2^-p",
            "exact" if ok else "mismatch",
            t0,
        )
    )

    t0 = time.monotonic()
    ok = True
    for s, r, _u in _error_samples():
        budget = approx_error_budget(s, r)
        ok &= budget == Fraction(33, 2 ** (s + 6))
        ok &= budget < Fraction(1, 2**s)
    results.append(
        _result(
            "08-refinement-budget",
            ok,
            "certified gap 33*2^-(s+6) < 2^-s for 20 samples",
            "exact" if ok else "violated",
            t0,
            note="any two truncations at radii >= s+2r+6 differ by less than the accuracy target",
        )
    )

    t0 = time.monotonic()
    tails = tail_sums(0)
    root_sym = 1 + tails["tau_total"]
    root_emp = mg_value(BesicovitchTrunc(0, k_cap), cube(2, 0, (0, 0)))
    ok = root_sym == 19 and root_emp <= 19
    results.append(
        _result(
            "08-root-capital",
            ok,
            "series root bound 19; truncation root <= 19",
            f"bound {root_sym}; truncation root {root_emp}",
            t0,
        )
    )

    t0 = time.monotonic()
    base = mg_value(BesicovitchTrunc(0, k_cap), cube(2, 1, (0, 1)))
    again = mg_value(BesicovitchTrunc(0, k_cap), cube(2, 1, (0, 1)))
    ok = base == again and base >= 0
    results.append(
        _result(
            "08-feasible-truncation-deterministic",
            ok,
            "feasible-radius truncation evaluates exactly and reproducibly",
            f"value {base}",
            t0,
        )
    )

    t0 = time.monotonic()
    try:
        besicovitch_hat(0, 0, (0, 0), k_cap=k_cap)
        results.append(
            _result(
                "08-deep-evaluation-cap",
                False,
                "cap-exceeded error carrying the offending pair",
                "evaluated (cap unexpectedly reached)",
                t0,
            )
        )
    except CapExceeded as exc:
        has_pair = "t" in exc.context and "j" in exc.context
        results.append(
            _result(
                "08-deep-evaluation-cap",
                has_pair,
                "cap-exceeded error carrying the offending pair",
                f"cap exceeded at t={exc.context.get('t')}, j={exc.context.get('j')}",
                t0,
                note="window areas decay ~1/k, so radius >= 6 searches cannot finish at desk scale",
            )
        )

    t0 = time.monotonic()
    results.append(
        _skip(
            "08-empirical-deep-refinement",
            "direct difference of two deep truncations",
            "coefficient searches exceed the stage cap (reported above); certified budget check stands in",
            t0,
        )
    )
    return results


# ---------------------------------------------------------------------------
# Criterion 9: coefficient bound.
# ---------------------------------------------------------------------------


def criterion_9_coefficient_bound(opts: dict) -> List[CheckResult]:
    k_cap = opts.get("k_max", caps.window_cap())
    t0 = time.monotonic()
    violations = []
    capped = 0
    computed = 0
    for t1 in range(-4, 5):
        for t2 in range(-4, 5):
            for j in range(5):
                weight = abs(t1) + abs(t2) + j
                try:
                    _region, coeff = coefficient_select((t1, t2), j, k_cap=k_cap)
                except CapExceeded:
                    capped += 1
                    continue
                computed += 1
                if coeff > Fraction(1, 2**weight):
                    violations.append(((t1, t2), j, coeff))
    ok = not violations
    return [
        _result(
            "09-coefficient-bound",
            ok,
            "coeff <= 2^-(|t1|+|t2|+j) on every computed entry",
            f"{computed} computed ok, {capped} cap-exceeded reported"
            if ok
            else f"violations: {violations[:3]}",
            t0,
            note="cap-exceeded entries are reported, not failed",
        )
    ]


# ---------------------------------------------------------------------------
# Criterion 10: window nesting of line-set stages.
# ---------------------------------------------------------------------------


def criterion_10_lineset_nesting(opts: dict) -> List[CheckResult]:
    results = []
    k_cap = opts.get("k_max", caps.window_cap())
    translates = [(t1, t2) for t1 in range(-2, 3) for t2 in range(-2, 3)]

    t0 = time.monotonic()
    bad = []
    for t in translates:
        window = AxisBox.of(-t[0], 1 - t[0], -t[1], 1 - t[1])
        for k in range(0, min(3, k_cap - 1) + 1):
            for word in itertools.product(fractal.DIGITS, repeat=k + 1):
                child = fractal.line_set_rect(fractal.fractal_square(word), window)
                if not child:
                    continue
                parent = fractal.line_set_rect(fractal.fractal_square(word[:-1]), window)
                if not region_subset(child, parent):
                    bad.append((t, word))
    results.append(
        _result(
            "10-per-square-nesting",
            not bad,
            "every finer window slice inside its parent slice",
            "all nested" if not bad else f"violations {bad[:3]}",
            t0,
            note="|t| <= 2, depths 0..3, exact convex containment",
        )
    )

    t0 = time.monotonic()
    bad = []
    for t in [(0, 0), (1, 0), (-1, 0), (0, -1), (1, 1), (-1, -1), (2, 1), (-2, 0)]:
        for k in range(0, 2):
            a = fractal.line_set_window(t, k + 1, cap=k_cap)
            b = fractal.line_set_window(t, k, cap=k_cap)
            if not region_subset(a, b):
                bad.append((t, k))
    results.append(
        _result(
            "10-window-nesting-sweep",
            not bad,
            "measure of (finer minus coarser) slice is 0",
            "all nested" if not bad else f"violations {bad}",
            t0,
            note="full union sweep cross-check at shallow depths",
        )
    )
    return results


# ---------------------------------------------------------------------------
# Criterion 11: direction coverage.
# ---------------------------------------------------------------------------


def criterion_11_directions(opts: dict) -> List[CheckResult]:
    results = []

    t0 = time.monotonic()
    slopes = {
        Fraction(0): (0, 0, 0, 0, 0),
        Fraction(1, 4): (1, 0, 0, 0, 0),
        Fraction(1, 2): (2, 0, 0, 0, 0),
        Fraction(3, 4): (3, 0, 0, 0, 0),
        Fraction(1): (3, 3, 3, 3, 3),
    }
    ok = True
    for slope, digits in slopes.items():
        point = fractal.slope_to_point(digits, 5)
        square = fractal.fractal_square(digits[:5])
        ok &= square.contains_point(point)
        ok &= abs(point.x - slope) <= Fraction(1, 4**5)
    results.append(
        _result(
            "11-parameter-membership",
            ok,
            "stage-5 squares contain their slope parameter points",
            "exact membership" if ok else "violation",
            t0,
        )
    )

    for j in (0, 1):
        t0 = time.monotonic()
        found = 0
        verified = 0
        tested = 0
        stage = perron.kakeya_stage(j)
        for i in range(-10, 11):
            slope = Fraction(i, 10)
            tested += 1
            seg = perron.direction_segment(slope, j)
            if seg is None:
                continue
            found += 1
            p, q = seg
            length_sq = (q.x - p.x) ** 2 + (q.y - p.y) ** 2
            if length_sq >= Fraction(1, 9) and segment_in_region(p, q, stage.thickened):
                verified += 1
        ok = tested == found == verified == 21
        results.append(
            _result(
                f"11-segment-certificates-j{j}",
                ok,
                "length >= 1/3 witness inside the thickened stage for 21 slopes",
                f"{found} found, {verified} verified of {tested}",
                t0,
            )
        )
    return results


# ---------------------------------------------------------------------------
# Criterion 12: coordinate lifts.
# ---------------------------------------------------------------------------


def criterion_12_lift(opts: dict) -> List[CheckResult]:
    results = []
    corpus = fairness_regions()
    factor2 = OpenSet(corpus[6][1])
    lifts = [
        ("y-axis", YAxis(), product_lift(YAxis(), zero_martingale(1))),
        ("open-set", factor2, product_lift(factor2, zero_martingale(1))),
    ]

    t0 = time.monotonic()
    bad = 0
    total = 0
    for r in range(4):
        top = 1 << r
        for u1 in range(top):
            for u2 in range(top):
                for u3 in range(top):
                    q3 = cube(3, r, (u1, u2, u3))
                    q2 = cube(2, r, (u1, u2))
                    for _name, factor, lift in lifts:
                        total += 1
                        if mg_value(lift, q3) != mg_value(factor, q2):
                            bad += 1
    results.append(
        _result(
            "12-additive-decomposition",
            bad == 0,
            "lift value = planar value + 0 on every cube to depth 3",
            f"{total} decompositions exact" if bad == 0 else f"{bad} mismatches",
            t0,
        )
    )

    t0 = time.monotonic()
    x = (Fraction(0), Fraction(1, 3))
    z = Fraction(5, 7)
    ok = True
    for _name, factor, lift in lifts:
        t2 = trace(factor, x, 6)
        t3 = trace(lift, (x[0], x[1], z), 6)
        ok &= t2.values() == t3.values()
        for threshold in (2, 4, 8, 16):
            ok &= t2.first_crossing(threshold) == t3.first_crossing(threshold)
    results.append(
        _result(
            "12-crossing-preservation",
            ok,
            "threshold crossings preserved verbatim in lifted traces",
            "preserved" if ok else "diverged",
            t0,
        )
    )
    return results


# ---------------------------------------------------------------------------
# Criterion 13: the growth cap is enforced, not endured.
# ---------------------------------------------------------------------------


def criterion_13_growth_guard(opts: dict) -> List[CheckResult]:
    results = []
    t0 = time.monotonic()
    try:
        perron.kakeya_stage(3)
        results.append(
            _result("13-stage-cap", False, "cap-exceeded error", "stage 3 built", t0)
        )
    except CapExceeded:
        results.append(
            _result(
                "13-stage-cap",
                True,
                "cap-exceeded error",
                "cap-exceeded error",
                t0,
                note="double-exponential growth is refused, not attempted",
            )
        )
    t0 = time.monotonic()
    try:
        perron.kakeya_mg_hat(3, 0, (0, 0))
        results.append(
            _result("13-approx-cap", False, "cap-exceeded error", "evaluated", t0)
        )
    except CapExceeded:
        results.append(
            _result("13-approx-cap", True, "cap-exceeded error", "cap-exceeded error", t0)
        )
    t0 = time.monotonic()
    ok = True
    sizes = {}
    for j in range(3):
        st = perron.kakeya_stage(j)
        sizes[j] = len(st.triangles)
        ok &= len(st.triangles) <= 2 ** (2 ** (j + 2))
        if j >= 1:
            prev = perron.kakeya_stage(j - 1)
            ok &= st.p == 2 ** (j + 1) * len(prev.triangles)
            ok &= len(st.triangles) == st.p * 2 ** (2**j)
        ok &= st.eps == Fraction(1, 2 ** (j + 1) * len(st.triangles))
    results.append(
        _result(
            "13-stage-recurrences",
            ok,
            "counts and widths follow the stage recurrences",
            f"sizes {sizes}",
            t0,
        )
    )
    return results


# ---------------------------------------------------------------------------
# Suite runner.
# ---------------------------------------------------------------------------

CRITERIA: Dict[str, Callable] = {
    "01-fairness": criterion_1_fairness,
    "02-stabilization": criterion_2_stabilization,
    "03-area-law": criterion_3_area_law,
    "04-equivalence": criterion_4_equivalence,
    "05-containment": criterion_5_containment,
    "06-nesting": criterion_6_nesting,
    "07-area-bounds": criterion_7_area_bounds,
    "08-truncation-error": criterion_8_besicovitch_error,
    "09-coefficient-bound": criterion_9_coefficient_bound,
    "10-lineset-nesting": criterion_10_lineset_nesting,
    "11-directions": criterion_11_directions,
    "12-lift": criterion_12_lift,
    "13-growth-guard": criterion_13_growth_guard,
}

SUITES: Dict[str, List[str]] = {
    "fairness": ["01-fairness", "02-stabilization"],
    "schoenberg": ["03-area-law", "04-equivalence", "05-containment"],
    "nesting": ["06-nesting", "10-lineset-nesting"],
    "besicovitch": ["08-truncation-error", "09-coefficient-bound"],
    "kakeya": ["07-area-bounds", "11-directions", "13-growth-guard"],
    "fubini": ["12-lift"],
}
SUITES["all"] = [name for name in CRITERIA]

# Criteria whose stated constant is unattainable for the constructed sets;
# their failures are expected, pinned and documented (see README).
DOCUMENTED_DISCREPANCIES = {
    "03-area-equality",
    "07-piece-area-equality",
}


def run_criterion(name: str, opts: dict | None = None) -> List[CheckResult]:
    opts = dict(opts or {})
    return CRITERIA[name](opts)


def run_suite(suite: str, opts: dict | None = None, log=None) -> VerificationReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    report = VerificationReport(suite=suite)
    for crit in SUITES[suite]:
        checks = run_criterion(crit, opts)
        report.checks.extend(checks)
        worst = "pass"
        if any(c.status == "fail" for c in checks):
            worst = "fail"
        elif any(c.status == "skip" for c in checks):
            worst = "pass (with skips)"
        if log is not None:
            log(f"{crit}: {worst.upper()}")
    return report


def report_to_json(report: VerificationReport) -> dict:
    return {
        "suite": report.suite,
        "checks": [
            {
                "id": c.check_id,
                "status": c.status,
                "expected": c.expected,
                "actual": c.actual,
                "elapsed_ms": c.elapsed_ms,
                "note": c.note,
            }
            for c in report.checks
        ],
    }


def report_from_json(data) -> VerificationReport:
    rep = VerificationReport(suite=data["suite"])
    for c in data["checks"]:
        rep.checks.append(
            CheckResult(
                check_id=c["id"],
                status=c["status"],
                expected=c["expected"],
                actual=c["actual"],
                elapsed_ms=int(c["elapsed_ms"]),
                note=c.get("note", ""),
            )
        )
    return rep
