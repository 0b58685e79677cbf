"""
Criterion factory for creating yield criteria from a kind name.
"""
from typing import Dict, Type, Union

from .base_criterion import CriterionKind, InvalidParameterError, YieldCriterion
from .combined_criterion import CombinedCriterion
from .isotropic_criterion import IsotropicCriterion
from .kinematic_criterion import KinematicCriterion
from .perfect_criterion import PerfectCriterion


class CriterionFactory:
    """Factory class for the yield criterion families."""

    _criterion_classes: Dict[CriterionKind, Type[YieldCriterion]] = {
        CriterionKind.PERFECT: PerfectCriterion,
        CriterionKind.ISOTROPIC: IsotropicCriterion,
        CriterionKind.KINEMATIC: KinematicCriterion,
        CriterionKind.COMBINED: CombinedCriterion,
    }

    @classmethod
    def create_criterion(cls, kind: Union[str, CriterionKind], sigma_Y0: float,
                         omega: float = 0.0, T0: float = 300.0) -> YieldCriterion:
        """Create the criterion for ``kind``; thermo kinds get the sigma_Y(T) law."""
        try:
            kind = CriterionKind(kind)
        except ValueError:
            raise InvalidParameterError(
                f"Unknown criterion kind: {kind}. Available: {cls.get_available_kinds()}"
            ) from None

        criterion_class = cls._criterion_classes[kind.family]
        return criterion_class(sigma_Y0, omega=omega, T0=T0, thermal=kind.is_thermo)

    @classmethod
    def get_available_kinds(cls) -> list:
        """Get list of every kind name, mechanical and thermo."""
        return [kind.value for kind in CriterionKind if kind.family in cls._criterion_classes]
