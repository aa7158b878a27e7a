"""Closed-form limit of AR(k) lattice sums, with brute-force oracles."""

import json as _json

from . import _core
from ._core import (
    CLUSTER_TOL,
    REALNESS_TOL,
    SCHEMA_VERSION,
    ArlimitError,
    EvalResult,
    F_eval,
    RootCluster,
    SlopeEstimate,
    __version__,
    ar_roots,
    bs_order_for,
    bs_truncated,
    char_polynomial,
    contour_coefficient,
    direct_sum_S4,
    is_conjugate_closed,
    is_stationary,
    lagged_cross_sum,
    limit_A,
    limit_A_confluent,
    residue_coefficients,
    rho_eval,
    simulate,
    slope_estimate,
    solve_roots,
    sum_x,
)


def run(request: dict) -> dict:
    """Run a request envelope (same schema as the CLI's --json input)."""
    return _json.loads(_core.run_json(_json.dumps(request)))

