"""
Isotropic and kinematic hardening together: f = |sigma - beta_k| + beta_i - sigma_Y.
"""
from .base_criterion import CriterionKind, GeneralizedStress, YieldCriterion


class CombinedCriterion(YieldCriterion):
    """Expanding and translating elastic range; gradients add component-wise."""

    kind = CriterionKind.COMBINED

    def relative_stress(self, z: GeneralizedStress) -> float:
        return z.sigma - z.beta_k

    def hardening_offset(self, z: GeneralizedStress) -> float:
        return z.beta_i

    def hardening_gradient(self, sign: float) -> tuple:
        return 1.0, -sign
