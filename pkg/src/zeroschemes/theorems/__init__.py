"""Numerical checks of the postulation statements and regularity constructions."""

from ..catalog import exception_catalog
from .horace import HoraceStep, horace_step, residual_configuration
from .numerics import double_point_bounds, numlem_decompose, quarter_bounds
from .regularity import build_regularity_config, regularity_family, regularity_scan
from .suites import (
    STATEMENTS,
    SuiteResult,
    cell_seed,
    corollary_d2_mixed_cells,
    family_resolution,
    summary,
    verify_cone,
    verify_corollary_mixed,
    verify_curvilinear,
    verify_divisor_points,
    verify_fattiles_p2,
    verify_hirzebruch,
    verify_p1p1,
    verify_regularity,
    verify_tiles_p2,
    verify_twosquare_lemma,
)
