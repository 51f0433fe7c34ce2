"""Continuous biframes in finite-dimensional Hilbert spaces.

Discretized measure spaces, vector families, biframe-operator assembly and
classification, operator factorizations, b-Riesz certificates and a
scenario-driven command-line verifier.
"""

from .engine import (
    DEFAULT_TOLERANCES,
    BiframeReport,
    Tolerances,
    assemble_biframe_operator,
    biframe_bounds,
    biframe_coefficients,
    classify_operator,
    classify_pair,
    controlled_frame_check,
    dual_relation_check,
    frame_operator,
    g_dual_check,
    reconstruct,
    swap_check,
)
from .estimators import BiframeAnalyzer
from .exceptions import (
    BadSpecError,
    BiframeError,
    DimensionMismatchError,
    NotOrthonormalError,
    NotPositiveDefiniteError,
    NotSelfAdjointError,
    NumericalInconsistencyError,
    ScenarioError,
    SingularOperatorError,
)
from .family import VectorFamily, analysis_map, sample_family, synthesis_map
from .linalg import fractional_power, polar_decompose, positivity_report
from .measure import MeasureSpace, integrate, make_counting_measure, make_uniform_quadrature
from .properties import run_property_suite
from .report import RunReport
from .riesz import (
    BRieszCertificate,
    FactorizationSpec,
    b_riesz_check,
    canonical_dual,
    construct_dual_family,
    factorize_pair,
    onb_class_check,
    onb_uniqueness_check,
    parseval_factor_check,
    product_pair_check,
    riesz_transfer_check,
    transform_biframe,
)
from .scenario import load_scenario, parse_scenario, run_scenario
from .worked_examples import run_paper_examples

__version__ = "0.1.0"

__all__ = [
    "analysis_map",
    "assemble_biframe_operator",
    "b_riesz_check",
    "BadSpecError",
    "biframe_bounds",
    "biframe_coefficients",
    "BiframeAnalyzer",
    "BiframeError",
    "BiframeReport",
    "BRieszCertificate",
    "canonical_dual",
    "classify_operator",
    "classify_pair",
    "construct_dual_family",
    "controlled_frame_check",
    "DEFAULT_TOLERANCES",
    "DimensionMismatchError",
    "dual_relation_check",
    "FactorizationSpec",
    "factorize_pair",
    "fractional_power",
    "frame_operator",
    "g_dual_check",
    "integrate",
    "load_scenario",
    "make_counting_measure",
    "make_uniform_quadrature",
    "MeasureSpace",
    "NotOrthonormalError",
    "NotPositiveDefiniteError",
    "NotSelfAdjointError",
    "NumericalInconsistencyError",
    "onb_class_check",
    "onb_uniqueness_check",
    "parse_scenario",
    "parseval_factor_check",
    "polar_decompose",
    "positivity_report",
    "product_pair_check",
    "reconstruct",
    "riesz_transfer_check",
    "run_paper_examples",
    "run_property_suite",
    "run_scenario",
    "RunReport",
    "sample_family",
    "ScenarioError",
    "SingularOperatorError",
    "swap_check",
    "synthesis_map",
    "Tolerances",
    "transform_biframe",
    "VectorFamily",
    "__version__",
]
