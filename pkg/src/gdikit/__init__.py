"""Exact and Monte Carlo toolkit for directed information flow between agents
and environments over finite interfaces."""

from .agency import (
    AgencyQuery,
    TensionReport,
    build_extremal_pair,
    check_tension,
    conserved_cmi,
    empowerment,
    mirror_check,
    plasticity,
    positive_plasticity_witness,
    tension_bound,
)
from .errors import (
    CapExceededError,
    GDIKitError,
    NumericalIntegrityError,
    PolicyContractError,
    UnsupportedConfigurationError,
)
from .estimator import (
    EstimateReport,
    SampleSet,
    bootstrap_ci,
    empirical_joint,
    estimate_gdi,
    sample_trajectories,
)
from .laws import (
    LawReport,
    LawSuiteConfig,
    check_bounds,
    check_conservation,
    check_di_conservation,
    check_dpi,
    check_interval_summation,
    check_temporal_consistency,
    run_law_suite,
    suite_to_csv,
)
from .measures import (
    Arrow,
    Interval,
    MeasureQuery,
    MeasureReport,
    causal_entropy,
    cmi,
    conditional_entropy,
    directed_information,
    entropy,
    gdi,
    kramer_decompose,
    span,
)
from .trajectory import (
    History,
    Interface,
    JointDist,
    Role,
    Trajectory,
    enumerate_joint,
    swap_roles,
)
from . import zoo

__all__ = [
    "AgencyQuery",
    "Arrow",
    "CapExceededError",
    "EstimateReport",
    "GDIKitError",
    "History",
    "Interface",
    "Interval",
    "JointDist",
    "LawReport",
    "LawSuiteConfig",
    "MeasureQuery",
    "MeasureReport",
    "NumericalIntegrityError",
    "PolicyContractError",
    "Role",
    "SampleSet",
    "TensionReport",
    "Trajectory",
    "UnsupportedConfigurationError",
    "bootstrap_ci",
    "build_extremal_pair",
    "causal_entropy",
    "check_bounds",
    "check_conservation",
    "check_di_conservation",
    "check_dpi",
    "check_interval_summation",
    "check_tension",
    "check_temporal_consistency",
    "cmi",
    "conditional_entropy",
    "conserved_cmi",
    "directed_information",
    "empirical_joint",
    "empowerment",
    "entropy",
    "enumerate_joint",
    "estimate_gdi",
    "gdi",
    "kramer_decompose",
    "mirror_check",
    "plasticity",
    "positive_plasticity_witness",
    "run_law_suite",
    "sample_trajectories",
    "span",
    "suite_to_csv",
    "swap_roles",
    "tension_bound",
    "zoo",
]
