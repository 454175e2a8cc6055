"""Exact-rational geometry and dyadic-martingale laboratory.

Builds staged Besicovitch line-set approximations and staged Kakeya
thickenings with exact rational arithmetic, evaluates the associated
betting martingales on dyadic cubes, and verifies the quantitative
claims (area laws, nesting, coefficient and truncation bounds) at desk
scale.
"""

from .errors import CapExceeded, UsageError
from .geometry import (
    AxisBox,
    ConvexPoly,
    HalfPlane,
    Point2,
    Region,
    clip_convex,
    clip_to_box,
    convex_hull,
    poly_area,
    pt,
    rat,
    region_area,
    region_subset,
    segment_in_region,
    thicken_horizontal,
)
from .fractal import (
    Square,
    area_drop_stage,
    besicovitch_assembly,
    contraction,
    fractal_square,
    line_set_rect,
    line_set_window,
    slope_to_point,
    stage,
    window_area,
)
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
    approx_error_budget,
    besicovitch_hat,
    besicovitch_trunc_value,
    children,
    coefficient_select,
    cube,
    fairness_residual,
    locate,
    mg_value,
    product_lift,
    symmetry_xform,
    tail_sums,
    trace,
    zero_martingale,
)
from .perron import (
    KakeyaStage,
    SproutStage,
    Triangle,
    area_bound_check,
    containment_check,
    cut_triangle,
    direction_segment,
    kakeya_mg_hat,
    kakeya_stage,
    nesting_check,
    per_piece_nesting_check,
    perron_area_check,
    piece_area_check,
    shift_construction,
    sprout,
    sprout_tree,
    triangle,
)

__version__ = "0.1.0"
