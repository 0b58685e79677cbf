"""
Constitutive content of the rheological regimes: stresses, energies,
Lagrangian and entropy jumps.

Temperature is a fixed parameter (no heat flux, no heat supply), so the
Helmholtz free energy reduces to the mechanical potential and the internal
energy is the stored energy plus T_fixed * S_e.
"""
from typing import Tuple

from criteria import (
    DEFAULT_TOL,
    FlowResult,
    GeneralizedStress,
    RegimeError,
    SecondLawViolationError,
    pairing,
)
from .material import MaterialModel, MaterialState


def stress(model: MaterialModel, state: MaterialState) -> GeneralizedStress:
    """sigma = E (eps - eps_p), beta_i = -K xi_i, beta_k = -H xi_k."""
    return GeneralizedStress(
        sigma=model.E * (state.eps - state.eps_p),
        beta_i=-model.K * state.xi_i,
        beta_k=-model.H * state.xi_k,
        T=model.temperature,
    )


def kinetic_energy(model: MaterialModel, state: MaterialState) -> float:
    return 0.5 * model.m * state.v ** 2


def stored_energy(model: MaterialModel, state: MaterialState) -> float:
    eps_e = state.eps - state.eps_p
    return 0.5 * model.E * eps_e ** 2


def hardening_potential(model: MaterialModel, state: MaterialState) -> float:
    return 0.5 * model.K * state.xi_i ** 2 + 0.5 * model.H * state.xi_k ** 2


def free_energy(model: MaterialModel, state: MaterialState) -> float:
    """Helmholtz free energy at fixed temperature."""
    return stored_energy(model, state) + hardening_potential(model, state)


def mechanical_energy(model: MaterialModel, state: MaterialState) -> float:
    """Kinetic + stored elastic + hardening potential."""
    return kinetic_energy(model, state) + free_energy(model, state)


def total_energy(model: MaterialModel, state: MaterialState) -> float:
    """Mechanical energy, plus T_fixed * S_e for thermo regimes."""
    energy = mechanical_energy(model, state)
    if model.is_thermo:
        energy += model.T_fixed * state.S_e
    return energy


def lagrangian(model: MaterialModel, state: MaterialState) -> float:
    """Kinetic energy minus the (free) potential energy."""
    return kinetic_energy(model, state) - free_energy(model, state)


def entropy_jumps(model: MaterialModel, z: GeneralizedStress,
                  flow: FlowResult) -> Tuple[float, float]:
    """Jumps (dS_e, dS_p) of elastic and plastic entropy at a plastic event.

    dS_e = <z, lam grad f> / T and dS_p = lam * df/dT.
    """
    if not model.is_thermo:
        raise RegimeError(f"entropy jumps need a thermo regime, got '{model.regime.value}'")
    if flow.lam == 0.0:
        return 0.0, 0.0
    T = z.T if z.T is not None else model.T_fixed
    return pairing(z, flow) / T, flow.d_S_p


def entropy_production(dS_e: float, dS_p: float, tol: float = DEFAULT_TOL) -> float:
    """gamma = dS_e + dS_p; raises when the second law is violated."""
    gamma = dS_e + dS_p
    if gamma < -tol:
        raise SecondLawViolationError(
            f"negative entropy production gamma = {gamma:.6e} "
            f"(dS_e = {dS_e:.6e}, dS_p = {dS_p:.6e})")
    return gamma


def dissipation_split(model: MaterialModel, z: GeneralizedStress,
                      flow: FlowResult) -> Tuple[float, float]:
    """Mechanical and thermal dissipation (D_mech, D_ther) of one event."""
    d_mech = pairing(z, flow)
    if not model.is_thermo:
        return d_mech, 0.0
    return d_mech, model.T_fixed * flow.d_S_p
