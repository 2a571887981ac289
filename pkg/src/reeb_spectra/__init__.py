"""Exact spectral invariants, spectral gaps and closing values for
combinatorially described contact three-manifolds."""

from .approx import (
    BestApprox,
    LatticeTriangle,
    UnimodularAffineMap,
    best_approx,
    brute_best_approx,
    lattice_count,
    normalize_T,
    traynor_width,
    triangle_T,
)
from .closing import (
    CloseReport,
    GapReport,
    asymptotic_ratio,
    ball_close_bound,
    close_ellipsoid,
    close_gap_crosscheck,
    ellipsoid_gap,
    gap,
    gap_average_bound,
    gap_bound_chain,
)
from .exactnum import ExactScalar, Ordering, cmp, floor_ratio, format_exact, parse_exact, sqrt
from .spectrum import (
    ActionSpectrum,
    ball_ck,
    combine_disjoint,
    ellipsoid_ck,
    ellipsoid_spectrum_prefix,
    ellipsoid_spectrum_upto,
    ellipsoid_volume,
)
from .toric import ToricPolygon, toric_reeb_actions

__version__ = "0.1.0"
