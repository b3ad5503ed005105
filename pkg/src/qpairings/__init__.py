"""Weighted pairing sums, q-Catalan polynomials, and correlated-GOE trace moments.

Independent computation routes for the same quantities: brute-force
enumeration of (non-crossing) pairings, exact polynomial recurrences, an
open-arc dynamic program, and Monte Carlo simulation of trace products of
correlated GOE matrices.
"""

__version__ = "0.1.0"

from .errors import (
    CapExceeded,
    DegreeBoundTooSmall,
    DimensionMismatch,
    InsufficientGrid,
    InvalidConfig,
    InvalidWeight,
    KernelDomain,
    KernelNotPSD,
    NoSignChange,
    QPairingsError,
    ZeroDenominator,
)
from .kernels import KernelSpec, load_kernel_file
from .pairings import (
    Pairing,
    PairingClass,
    all_pairing_count,
    catalan_number,
    count_pairings,
    enumerate_pairings,
    is_non_crossing,
    weight_exponent,
    weighted_sum_general,
    weighted_sum_poly,
)
from .polynomial import WeightPoly
from .qcatalan import (
    BkTable,
    PhiTable,
    bk_phi_consistency,
    bk_recurrence,
    phi_recurrence,
    q_catalan_reversal,
)
from .rmt_sim import (
    MomentEstimate,
    RmtConfig,
    estimate_moment,
    generate_family,
    odd_moment_probe,
    trace_product_sample,
    variance_decay_probe,
)
from .scalar_moments import (
    Backend,
    DpState,
    GrowthCurve,
    GrowthPoint,
    PcBracket,
    dp_trajectory,
    growth_curve,
    noncrossing_moment_dp,
    pc_bracket,
    scalar_moment_dp,
)

__all__ = [
    "Backend",
    "BkTable",
    "CapExceeded",
    "DegreeBoundTooSmall",
    "DimensionMismatch",
    "DpState",
    "GrowthCurve",
    "GrowthPoint",
    "InsufficientGrid",
    "InvalidConfig",
    "InvalidWeight",
    "KernelDomain",
    "KernelNotPSD",
    "KernelSpec",
    "MomentEstimate",
    "NoSignChange",
    "Pairing",
    "PairingClass",
    "PcBracket",
    "PhiTable",
    "QPairingsError",
    "RmtConfig",
    "WeightPoly",
    "ZeroDenominator",
    "all_pairing_count",
    "bk_phi_consistency",
    "bk_recurrence",
    "catalan_number",
    "count_pairings",
    "dp_trajectory",
    "enumerate_pairings",
    "estimate_moment",
    "generate_family",
    "growth_curve",
    "is_non_crossing",
    "load_kernel_file",
    "noncrossing_moment_dp",
    "odd_moment_probe",
    "pc_bracket",
    "phi_recurrence",
    "q_catalan_reversal",
    "scalar_moment_dp",
    "trace_product_sample",
    "variance_decay_probe",
    "weight_exponent",
    "weighted_sum_general",
    "weighted_sum_poly",
]
