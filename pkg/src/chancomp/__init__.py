"""Degradedness coefficients and cooperative-network capacity tools for
discrete memoryless channels."""

__version__ = "0.1.0"

from .channels import (
    AuxiliaryJoint,
    Channel,
    ChannelError,
    DimensionMismatch,
    Distribution,
    PreconditionError,
    cascade,
    make_channel,
    push_forward,
    standard_channel,
)
from .infotheory import (
    CapacityResult,
    ConvergenceError,
    MutualInfoCurvature,
    aux_decomposition,
    binary_entropy,
    capacity_ba,
    entropy,
    kl_divergence,
    mi_hessian,
    mutual_information,
)
from .search import GridSpec
from .degradedness import (
    DegradednessCertificate,
    EtaBoundsReport,
    EtaReport,
    check_concavity,
    eta_bounds_report,
    eta_kl,
    eta_ln,
    eta_ln_div_lower,
    eta_mc,
    test_degraded,
)
from .regions import (
    BdcRate,
    ConditionReport,
    RatePoint,
    RateRegion,
    bc_inner_region,
    bc_modified_regions,
    bc_tightness_check,
    bdc_achievable,
    bdc_capacity,
    prc_capacity,
    prc_df_rate,
)
from .nonlinear import (
    ProfileCurve,
    degradation_profile,
    domination_excess,
    domination_excess_inverse,
    domination_profile,
    domination_tightness_check,
    envelope,
)

__all__ = [
    "__version__",
    "AuxiliaryJoint",
    "Channel",
    "ChannelError",
    "DimensionMismatch",
    "Distribution",
    "PreconditionError",
    "cascade",
    "make_channel",
    "push_forward",
    "standard_channel",
    "CapacityResult",
    "ConvergenceError",
    "MutualInfoCurvature",
    "aux_decomposition",
    "binary_entropy",
    "capacity_ba",
    "entropy",
    "kl_divergence",
    "mi_hessian",
    "mutual_information",
    "GridSpec",
    "DegradednessCertificate",
    "EtaBoundsReport",
    "EtaReport",
    "check_concavity",
    "eta_bounds_report",
    "eta_kl",
    "eta_ln",
    "eta_ln_div_lower",
    "eta_mc",
    "test_degraded",
    "BdcRate",
    "ConditionReport",
    "RatePoint",
    "RateRegion",
    "bc_inner_region",
    "bc_modified_regions",
    "bc_tightness_check",
    "bdc_achievable",
    "bdc_capacity",
    "prc_capacity",
    "prc_df_rate",
    "ProfileCurve",
    "degradation_profile",
    "domination_excess",
    "domination_excess_inverse",
    "domination_profile",
    "domination_tightness_check",
    "envelope",
]
