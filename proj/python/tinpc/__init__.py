"""Exact GDoF power control under treating interference as noise.

Rationals are exchanged as fractions.Fraction; power allocations are lists
whose entries are Fractions (exponents <= 0) or None for a silent user.
Users are numbered from 1 in every returned set.
"""

from ._tinpc import (
    EnumerationLimitError,
    ParseError,
    PreconditionError,
    Topology,
    append_isolated_user,
    bound_B,
    certificate_small_k,
    certificate_square,
    diagonal_topology,
    extremal_grid,
    extremal_small,
    gain_sweep,
    is_strictly_positive_class,
    kk_power_allocation,
    local_search,
    normalize_power,
    random_topology,
    ratio,
    run,
    solve_bpc_gdof,
    solve_bpc_rate,
    solve_opc,
    solve_opc_grid,
    sum_gdof,
    sum_rate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
