"""
Material parameters and the simulated state of a single material point.
"""
import math
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Any, Dict, Optional, Union

from criteria import CriterionFactory, CriterionKind, InvalidParameterError, YieldCriterion


@dataclass(frozen=True)
class MaterialModel:
    """Spring, frictional pad and hardening springs of the 1-D rheological model."""
    E: float
    m: float
    sigma_Y0: float
    regime: Union[CriterionKind, str] = CriterionKind.PERFECT
    K: float = 0.0
    H: float = 0.0
    omega: float = 0.0
    T0: float = 300.0
    T_fixed: float = 300.0

    def __post_init__(self):
        try:
            regime = CriterionKind(self.regime)
        except ValueError:
            raise InvalidParameterError(
                f"Unknown regime: {self.regime}. "
                f"Available: {CriterionFactory.get_available_kinds()}"
            ) from None
        object.__setattr__(self, "regime", regime)

        if self.E <= 0 or self.m <= 0:
            raise InvalidParameterError(f"E and m must be > 0, got E={self.E}, m={self.m}")
        if self.K < 0 or self.H < 0:
            raise InvalidParameterError(f"K and H must be >= 0, got K={self.K}, H={self.H}")
        if self.K > 0 and not regime.uses_isotropic:
            raise InvalidParameterError(
                f"regime '{regime.value}' is inconsistent with K={self.K} > 0; "
                f"use an isotropic or combined regime")
        if self.H > 0 and not regime.uses_kinematic:
            raise InvalidParameterError(
                f"regime '{regime.value}' is inconsistent with H={self.H} > 0; "
                f"use a kinematic or combined regime")
        if regime.is_thermo:
            if self.T_fixed <= 0:
                raise InvalidParameterError(f"T_fixed must be > 0, got {self.T_fixed}")
            # surfaces a collapsed sigma_Y(T_fixed) at construction time
            self.criterion.yield_stress(self.T_fixed)

    @cached_property
    def criterion(self) -> YieldCriterion:
        return CriterionFactory.create_criterion(
            self.regime, self.sigma_Y0, omega=self.omega, T0=self.T0)

    @property
    def is_thermo(self) -> bool:
        return self.regime.is_thermo

    @property
    def temperature(self) -> Optional[float]:
        return self.T_fixed if self.is_thermo else None

    @property
    def natural_frequency(self) -> float:
        """Angular frequency sqrt(E / m) of the elastic oscillation."""
        return math.sqrt(self.E / self.m)

    @property
    def yield_stress(self) -> float:
        return self.criterion.yield_stress(self.temperature)

    def to_dict(self) -> Dict[str, Any]:
        data = {k: v for k, v in asdict(self).items()}
        data["regime"] = self.regime.value
        return data


@dataclass
class MaterialState:
    """Full simulated state at time t.

    eps_e = eps - eps_p and S = S_e + S_p hold by construction; eps_p, xi_i,
    xi_k and S_p only change at plastic events.
    """
    eps: float = 0.0
    v: float = 0.0
    eps_p: float = 0.0
    xi_i: float = 0.0
    xi_k: float = 0.0
    S_e: float = 0.0
    S_p: float = 0.0
    t: float = 0.0

    @property
    def eps_e(self) -> float:
        return self.eps - self.eps_p

    @property
    def S(self) -> float:
        return self.S_e + self.S_p

    def momentum(self, m: float) -> float:
        return m * self.v

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)
