"""
Perfect plasticity: the 1-D Tresca criterion f = |sigma| - sigma_Y.
"""
from .base_criterion import CriterionKind, GeneralizedStress, YieldCriterion


class PerfectCriterion(YieldCriterion):
    """Fixed elastic range [-sigma_Y, sigma_Y]; no hardening variables."""

    kind = CriterionKind.PERFECT

    def relative_stress(self, z: GeneralizedStress) -> float:
        return z.sigma

    def hardening_gradient(self, sign: float) -> tuple:
        return 0.0, 0.0
