"""
Convex-analysis primitives: yield evaluation, normal-cone flow, closest-point
return mapping, support-function dissipation and viscous regularization.

All functions are pure in their value inputs.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .base_criterion import (
    DEFAULT_TOL,
    FlowResult,
    GeneralizedStress,
    InvalidParameterError,
    NonDifferentiablePointError,
    YieldCriterion,
    YieldGradient,
)


@dataclass
class KKTReport:
    """Outcome of a Kuhn-Tucker check; truthy when every clause holds."""
    passed: bool
    residuals: dict = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _check_moduli(E: float, K: float, H: float):
    if E <= 0:
        raise InvalidParameterError(f"E must be > 0, got {E}")
    if K < 0 or H < 0:
        raise InvalidParameterError(f"K and H must be >= 0, got K={K}, H={H}")


def evaluate_yield(crit: YieldCriterion, z: GeneralizedStress) -> float:
    """f(z); negative inside the elastic range, zero on the yield surface."""
    return crit.evaluate(z)


def yield_gradient(crit: YieldCriterion, z: GeneralizedStress) -> YieldGradient:
    """(df/dsigma, df/dbeta_i, df/dbeta_k, df/dT) away from the kink."""
    return crit.gradient(z)


def corrected_stress(z: GeneralizedStress, flow: FlowResult, E: float,
                     K: float = 0.0, H: float = 0.0) -> GeneralizedStress:
    """Generalized stress after the internal variables jump by lam * direction."""
    return GeneralizedStress(
        sigma=z.sigma - E * flow.d_eps_p,
        beta_i=z.beta_i - K * flow.d_xi_i,
        beta_k=z.beta_k - H * flow.d_xi_k,
        T=z.T,
    )


def project_return_map(crit: YieldCriterion, z_trial: GeneralizedStress, E: float,
                       K: float = 0.0, H: float = 0.0,
                       tol: float = DEFAULT_TOL) -> Tuple[FlowResult, GeneralizedStress]:
    """Closest-point projection of a trial state onto {f <= 0}.

    The metric is weighted by the inverse moduli, so for the linear potentials
    used here the multiplier has the closed form lam = f_trial / h with h the
    return stiffness (E, E + K, E + H or E + K + H).

    When that multiplier would carry the relative stress past zero the return
    ends on the apex of the surface instead (see ``apex_return``).
    """
    _check_moduli(E, K, H)
    f_trial = crit.evaluate(z_trial)
    if f_trial <= tol:
        return FlowResult.none(), z_trial

    if crit.relative_stress(z_trial) == 0.0:
        return apex_return(crit, z_trial, E, K, H)
    gradient = crit.gradient(z_trial)
    lam = f_trial / crit.return_stiffness(gradient, E, K, H)
    if lam >= crit.kink_distance(z_trial, gradient, E, H):
        return apex_return(crit, z_trial, E, K, H)

    flow = FlowResult.along(lam, gradient)
    return flow, corrected_stress(z_trial, flow, E, K, H)


def apex_return(crit: YieldCriterion, z_trial: GeneralizedStress, E: float,
                K: float = 0.0, H: float = 0.0) -> Tuple[FlowResult, GeneralizedStress]:
    """Return onto the apex, where the relative stress vanishes.

    Only the isotropic term can close the gap there: lam = (beta_i - sigma_Y) / K,
    and the stress-like direction is the subgradient c = r / ((E + H) lam),
    |c| <= 1, that brings the relative stress r to zero in one jump.
    """
    d_beta_i, d_beta_k = crit.hardening_gradient(1.0)
    if d_beta_i == 0.0 or K == 0.0:
        raise NonDifferentiablePointError(
            f"no admissible return of {z_trial} for {crit!r}: the apex lies outside "
            f"the elastic range and K={K} cannot move it")
    kinematic = abs(d_beta_k)
    lam = (z_trial.beta_i - crit.yield_stress(z_trial.T)) / K
    if lam <= 0.0:
        raise NonDifferentiablePointError(
            f"return of {z_trial} reached the apex of {crit!r} with lam={lam:.3e}")
    c = crit.relative_stress(z_trial) / ((E + H * kinematic) * lam)
    flow = FlowResult(lam=lam, dir_eps_p=c, dir_xi_i=d_beta_i,
                      dir_xi_k=-c * kinematic, dir_S_p=crit.d_f_dT())
    return flow, corrected_stress(z_trial, flow, E, K, H)


def pairing(z: GeneralizedStress, flow: FlowResult) -> float:
    """<z, lam grad f> over the mechanical components (sigma, beta_i, beta_k)."""
    return flow.lam * (z.sigma * flow.dir_eps_p
                       + z.beta_i * flow.dir_xi_i
                       + z.beta_k * flow.dir_xi_k)


def dissipation(crit: YieldCriterion, z: GeneralizedStress, flow: FlowResult,
                tol: float = DEFAULT_TOL) -> float:
    """Support-function value of the flow at an admissible stress.

    Equals lam * sigma_Y(T) on the yield surface.
    """
    if flow.lam == 0.0:
        return 0.0
    f = crit.evaluate(z)
    if f > tol:
        raise InvalidParameterError(
            f"dissipation needs an admissible stress, f(z) = {f:.3e} > {tol:.1e}")
    return pairing(z, flow)


def viscoplastic_flow(crit: YieldCriterion, z: GeneralizedStress, eta: float, E: float,
                      K: float = 0.0, H: float = 0.0,
                      dt: Optional[float] = None) -> FlowResult:
    """Perzyna-type flow, the gradient of the Moreau-Yosida envelope.

    Without ``dt`` the returned ``lam`` is the rate max(0, f) / eta at z.
    With ``dt`` it is the backward-Euler increment from the trial state z,
    dt * f / (eta + dt * h), which tends to the return-map multiplier as
    eta -> 0.
    """
    if eta <= 0:
        raise InvalidParameterError(f"viscosity eta must be > 0, got {eta}")
    _check_moduli(E, K, H)
    f = crit.evaluate(z)
    if f <= 0.0:
        return FlowResult.none()

    gradient = crit.gradient(z)
    if dt is None:
        return FlowResult.along(f / eta, gradient)
    if dt <= 0:
        raise InvalidParameterError(f"dt must be > 0, got {dt}")
    h = crit.return_stiffness(gradient, E, K, H)
    return FlowResult.along(dt * f / (eta + dt * h), gradient)


def viscoplastic_return_map(crit: YieldCriterion, z_trial: GeneralizedStress, eta: float,
                            dt: float, E: float, K: float = 0.0,
                            H: float = 0.0) -> Tuple[FlowResult, GeneralizedStress]:
    """One implicit viscoplastic correction; leaves an overstress f = eta * lam / dt."""
    flow = viscoplastic_flow(crit, z_trial, eta, E, K, H, dt=dt)
    if flow.lam == 0.0:
        return flow, z_trial
    return flow, corrected_stress(z_trial, flow, E, K, H)


def kkt_check(crit: YieldCriterion, z_post: GeneralizedStress, flow: FlowResult,
              tol: float = DEFAULT_TOL) -> KKTReport:
    """Check lam >= 0, f <= 0 and lam * f = 0, each within ``tol``."""
    f = crit.evaluate(z_post)
    residuals = {
        "multiplier": max(0.0, -flow.lam),
        "admissibility": max(0.0, f),
        "complementarity": abs(flow.lam * f),
    }
    violations = [
        f"{clause}: residual {value:.3e} > {tol:.1e}"
        for clause, value in residuals.items()
        if value > tol
    ]
    return KKTReport(passed=not violations, residuals=residuals, violations=violations)
