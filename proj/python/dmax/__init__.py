"""Directional maximal operators on periodic grids."""

from ._dmax import (
    ChainError,
    DomainError,
    FormatError,
    StructuralError,
    VerificationError,
    certify_log_order,
    check_kernels,
    directional_max,
    dyadic_scales,
    equispaced_slopes,
    estimate_norm,
    fejer,
    gamma_apply,
    geometric_slopes,
    is_one_lacunary,
    parallelogram_max,
    psi,
    psi_hat,
    run_experiment,
    sector_project,
    strong_max,
    window_phi,
)

__all__ = [name for name in dir() if not name.startswith("_")]
