"""
Linear isotropic hardening: f = |sigma| + beta_i - sigma_Y.
"""
from .base_criterion import CriterionKind, GeneralizedStress, YieldCriterion


class IsotropicCriterion(YieldCriterion):
    """The elastic range expands as beta_i = -K xi_i becomes more negative."""

    kind = CriterionKind.ISOTROPIC

    def relative_stress(self, z: GeneralizedStress) -> float:
        return z.sigma

    def hardening_offset(self, z: GeneralizedStress) -> float:
        return z.beta_i

    def hardening_gradient(self, sign: float) -> tuple:
        return 1.0, 0.0
