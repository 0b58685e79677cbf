"""
Linear kinematic hardening: f = |sigma - beta_k| - sigma_Y.
"""
from .base_criterion import CriterionKind, GeneralizedStress, YieldCriterion


class KinematicCriterion(YieldCriterion):
    """The elastic range keeps its width 2 sigma_Y and is centred on beta_k."""

    kind = CriterionKind.KINEMATIC

    def relative_stress(self, z: GeneralizedStress) -> float:
        return z.sigma - z.beta_k

    def hardening_gradient(self, sign: float) -> tuple:
        return 0.0, -sign
