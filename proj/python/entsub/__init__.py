"""Completely entangled subspaces and unambiguous local discrimination.

Thin wrapper over the compiled ``_entsub`` extension; all numerics live in
the C++ core.
"""

from ._entsub import (
    DegeneratePencilError,
    InvalidInputError,
    NumericalConsistencyError,
    certify,
    certify_states,
    count_products,
    determinantal_degree,
    find_low_rank,
    find_product,
    generic_verdict,
    locc_threshold,
    min_copies,
    pencil_roots,
    predicted_success,
    random_product_state,
    random_state,
    random_subspace,
    run_cli,
    s_max,
    schmidt_coefficients,
    schmidt_smax,
    segre_degree,
    simulate_certificate,
    threshold_report,
)

__all__ = [
    "DegeneratePencilError",
    "InvalidInputError",
    "NumericalConsistencyError",
    "certify",
    "certify_states",
    "count_products",
    "determinantal_degree",
    "find_low_rank",
    "find_product",
    "generic_verdict",
    "locc_threshold",
    "min_copies",
    "pencil_roots",
    "predicted_success",
    "random_product_state",
    "random_state",
    "random_subspace",
    "run_cli",
    "s_max",
    "schmidt_coefficients",
    "schmidt_smax",
    "segre_degree",
    "simulate_certificate",
    "threshold_report",
]
