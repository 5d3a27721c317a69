"""Additive embedding costs for JPEG covers with switchable window alignment."""

from .container import (
    COEFF_MAX,
    COEFF_MIN,
    ContainerError,
    DctContainer,
    read_container,
    write_container,
    write_grid,
)
from .costmap import (
    CostMap,
    CostParams,
    ImpactLut,
    WindowMode,
    block_costs,
    build_impact_lut,
    compute_costmap,
    costmap_oracle,
    count_nzac,
    window_bounds,
)
from .embed import ProbMap, expected_changes, simulate, solve_lambda, ternary_entropy
from .filterbank import FilterBank, build_filter_bank, correlate_same, pad_symmetric, residuals
from .jpeg import decompress, dct_basis, forward_quantize, quality_table
from .analysis import AnalysisReport, compare, quality_sweep, synth_cover
from .rng import uniform_at, uniform_grid

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "COEFF_MAX",
    "COEFF_MIN",
    "ContainerError",
    "CostMap",
    "CostParams",
    "DctContainer",
    "FilterBank",
    "ImpactLut",
    "ProbMap",
    "WindowMode",
    "block_costs",
    "build_filter_bank",
    "build_impact_lut",
    "compare",
    "compute_costmap",
    "correlate_same",
    "costmap_oracle",
    "count_nzac",
    "dct_basis",
    "decompress",
    "expected_changes",
    "forward_quantize",
    "pad_symmetric",
    "quality_sweep",
    "quality_table",
    "read_container",
    "residuals",
    "simulate",
    "solve_lambda",
    "synth_cover",
    "ternary_entropy",
    "uniform_at",
    "uniform_grid",
    "window_bounds",
    "write_container",
    "write_grid",
]
