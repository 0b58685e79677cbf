"""
Criteria package: yield criteria and the convex-analysis primitives built on them.
"""

from .base_criterion import (
    DEFAULT_TOL,
    CriterionKind,
    FlowResult,
    GeneralizedStress,
    InvalidParameterError,
    NonDifferentiablePointError,
    PlasticityError,
    RegimeError,
    SecondLawViolationError,
    YieldCriterion,
    YieldGradient,
)
from .perfect_criterion import PerfectCriterion
from .isotropic_criterion import IsotropicCriterion
from .kinematic_criterion import KinematicCriterion
from .combined_criterion import CombinedCriterion
from .factory import CriterionFactory
from .convex_ops import (
    KKTReport,
    apex_return,
    corrected_stress,
    dissipation,
    evaluate_yield,
    kkt_check,
    pairing,
    project_return_map,
    viscoplastic_flow,
    viscoplastic_return_map,
    yield_gradient,
)

__all__ = [
    'DEFAULT_TOL',
    'CriterionKind',
    'FlowResult',
    'GeneralizedStress',
    'InvalidParameterError',
    'NonDifferentiablePointError',
    'PlasticityError',
    'RegimeError',
    'SecondLawViolationError',
    'YieldCriterion',
    'YieldGradient',
    'PerfectCriterion',
    'IsotropicCriterion',
    'KinematicCriterion',
    'CombinedCriterion',
    'CriterionFactory',
    'KKTReport',
    'apex_return',
    'corrected_stress',
    'dissipation',
    'evaluate_yield',
    'kkt_check',
    'pairing',
    'project_return_map',
    'viscoplastic_flow',
    'viscoplastic_return_map',
    'yield_gradient',
]
