"""
Base yield criterion and the value types shared by the convex-analysis primitives.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Optional

# Absolute tolerance (stress units) for admissibility and complementarity.
DEFAULT_TOL = 1e-9


class PlasticityError(Exception):
    """Base class for every error raised by the simulator."""


class InvalidParameterError(PlasticityError, ValueError):
    """Material or criterion parameters outside their admissible range."""


class NonDifferentiablePointError(PlasticityError):
    """The yield function has no unique gradient at the requested point."""


class RegimeError(PlasticityError, ValueError):
    """An operation was requested for a regime that does not support it."""


class SecondLawViolationError(PlasticityError):
    """Negative entropy production at a plastic event."""


class CriterionKind(str, Enum):
    """Yield criterion families, with and without temperature dependence."""
    PERFECT = "perfect"
    ISOTROPIC = "isotropic"
    KINEMATIC = "kinematic"
    COMBINED = "combined"
    THERMO_PERFECT = "thermo_perfect"
    THERMO_ISOTROPIC = "thermo_isotropic"
    THERMO_KINEMATIC = "thermo_kinematic"
    THERMO_COMBINED = "thermo_combined"

    @property
    def is_thermo(self) -> bool:
        return self.value.startswith("thermo_")

    @property
    def family(self) -> "CriterionKind":
        """The mechanical kind underneath a thermo kind."""
        return CriterionKind(self.value.replace("thermo_", "", 1))

    @property
    def uses_isotropic(self) -> bool:
        return self.family in (CriterionKind.ISOTROPIC, CriterionKind.COMBINED)

    @property
    def uses_kinematic(self) -> bool:
        return self.family in (CriterionKind.KINEMATIC, CriterionKind.COMBINED)


@dataclass
class GeneralizedStress:
    """Stress, isotropic and kinematic back-stresses and temperature at one instant."""
    sigma: float
    beta_i: float = 0.0
    beta_k: float = 0.0
    T: Optional[float] = None


class YieldGradient(NamedTuple):
    """Partial derivatives of f with respect to (sigma, beta_i, beta_k, T)."""
    d_sigma: float
    d_beta_i: float
    d_beta_k: float
    d_T: float


@dataclass(frozen=True)
class FlowResult:
    """Plastic multiplier and the flow direction on each internal variable.

    The direction components are the yield gradient at the returned point,
    so lam * (dir_eps_p, dir_xi_i, dir_xi_k, dir_S_p) lies in the normal cone.
    """
    lam: float
    dir_eps_p: float = 0.0
    dir_xi_i: float = 0.0
    dir_xi_k: float = 0.0
    dir_S_p: float = 0.0

    @classmethod
    def none(cls) -> "FlowResult":
        return cls(lam=0.0)

    @classmethod
    def along(cls, lam: float, gradient: YieldGradient) -> "FlowResult":
        return cls(
            lam=lam,
            dir_eps_p=gradient.d_sigma,
            dir_xi_i=gradient.d_beta_i,
            dir_xi_k=gradient.d_beta_k,
            dir_S_p=gradient.d_T,
        )

    @property
    def d_eps_p(self) -> float:
        return self.lam * self.dir_eps_p

    @property
    def d_xi_i(self) -> float:
        return self.lam * self.dir_xi_i

    @property
    def d_xi_k(self) -> float:
        return self.lam * self.dir_xi_k

    @property
    def d_S_p(self) -> float:
        return self.lam * self.dir_S_p


class YieldCriterion(ABC):
    """Base class for scalar yield functions f with E = {z | f(z) <= 0} convex.

    Subclasses supply the shape of f through ``relative_stress`` and
    ``hardening_offset``; the temperature law is shared:
    sigma_Y(T) = sigma_Y0 * (1 - omega * (T - T0)).
    """

    kind: CriterionKind = CriterionKind.PERFECT

    def __init__(self, sigma_Y0: float, omega: float = 0.0, T0: float = 300.0,
                 thermal: bool = False):
        if sigma_Y0 <= 0:
            raise InvalidParameterError(f"sigma_Y0 must be > 0, got {sigma_Y0}")
        if omega < 0:
            raise InvalidParameterError(f"omega must be >= 0, got {omega}")
        self.sigma_Y0 = float(sigma_Y0)
        self.omega = float(omega) if thermal else 0.0
        self.T0 = float(T0)
        self.thermal = thermal
        if thermal:
            self.kind = CriterionKind(f"thermo_{self.kind.value}")

    def yield_stress(self, T: Optional[float] = None) -> float:
        """Current yield stress; raises when the surface has collapsed."""
        if not self.thermal:
            return self.sigma_Y0
        if T is None or T <= 0:
            raise InvalidParameterError(
                f"{self.kind.value} needs an absolute temperature T > 0, got {T}")
        sigma_Y = self.sigma_Y0 * (1.0 - self.omega * (T - self.T0))
        if sigma_Y <= 0:
            raise InvalidParameterError(
                f"yield surface collapsed: sigma_Y({T}) = {sigma_Y} <= 0")
        return sigma_Y

    def d_f_dT(self) -> float:
        return self.sigma_Y0 * self.omega if self.thermal else 0.0

    @abstractmethod
    def relative_stress(self, z: GeneralizedStress) -> float:
        """Argument of the absolute value in f (sigma, or sigma - beta_k)."""

    def hardening_offset(self, z: GeneralizedStress) -> float:
        """Additive back-stress term of f (beta_i for isotropic families)."""
        return 0.0

    @abstractmethod
    def hardening_gradient(self, sign: float) -> tuple:
        """(d f / d beta_i, d f / d beta_k) for a given sign of the relative stress."""

    def evaluate(self, z: GeneralizedStress) -> float:
        return abs(self.relative_stress(z)) + self.hardening_offset(z) - self.yield_stress(z.T)

    def scalar_form(self, T: Optional[float] = None) -> Callable[[float, float, float], float]:
        """f on bare (sigma, beta_i, beta_k) with sigma_Y(T) bound once.

        Gives the same floats as ``evaluate``; the time loop uses it to test
        elastic trials without building a GeneralizedStress per step.
        """
        sigma_Y = self.yield_stress(T)
        if self.kind.uses_kinematic and self.kind.uses_isotropic:
            return lambda sigma, beta_i, beta_k: abs(sigma - beta_k) + beta_i - sigma_Y
        if self.kind.uses_kinematic:
            return lambda sigma, beta_i, beta_k: abs(sigma - beta_k) - sigma_Y
        if self.kind.uses_isotropic:
            return lambda sigma, beta_i, beta_k: abs(sigma) + beta_i - sigma_Y
        return lambda sigma, beta_i, beta_k: abs(sigma) - sigma_Y

    def gradient(self, z: GeneralizedStress) -> YieldGradient:
        rel = self.relative_stress(z)
        if rel == 0.0:
            raise NonDifferentiablePointError(
                f"{self.kind.value}: f has a kink at relative stress 0 (z={z})")
        sign = 1.0 if rel > 0 else -1.0
        d_beta_i, d_beta_k = self.hardening_gradient(sign)
        return YieldGradient(sign, d_beta_i, d_beta_k, self.d_f_dT())

    def return_stiffness(self, gradient: YieldGradient, E: float, K: float, H: float) -> float:
        """Rate at which f drops per unit multiplier along the flow."""
        return E + K * abs(gradient.d_beta_i) + H * abs(gradient.d_beta_k)

    def kink_distance(self, z: GeneralizedStress, gradient: YieldGradient,
                      E: float, H: float) -> float:
        """Multiplier at which the relative stress would reach the kink."""
        return abs(self.relative_stress(z)) / (E + H * abs(gradient.d_beta_k))

    def __repr__(self) -> str:
        extra = f", omega={self.omega}, T0={self.T0}" if self.thermal else ""
        return f"{self.__class__.__name__}(sigma_Y0={self.sigma_Y0}{extra})"
