"""
Position-Verlet elastic predictor and plastic corrector.

The corrector is the jump: it is applied instantaneously at the end of the
step, changes (eps_p, xi_i, xi_k, S_e, S_p) and never touches the velocity,
so m * v is continuous across every event.
"""
import logging
from dataclasses import replace
from enum import Enum
from typing import Optional, Tuple

from scipy.optimize import bisect

from criteria import (
    DEFAULT_TOL,
    FlowResult,
    GeneralizedStress,
    dissipation,
    pairing,
    project_return_map,
    viscoplastic_return_map,
)
from models import MaterialModel, MaterialState, entropy_jumps, entropy_production, stress
from .loading import LoadingProgram
from .trajectory import PlasticEvent

logger = logging.getLogger("nonsmooth_plast.integrator")

# bisection tolerance on the yield crossing, as a fraction of dt
LOCALIZATION_XTOL = 1e-6


class EventLocalization(str, Enum):
    PER_STEP = "per_step"
    BISECTION = "bisection"


def elastic_trial_step(model: MaterialModel, state: MaterialState, dt: float,
                       loading: LoadingProgram) -> MaterialState:
    """Advance m eps'' + E (eps - eps_p) = F(t) by one step with frozen internal variables."""
    t_new = state.t + dt
    if loading.prescribes_strain:
        eps_new = loading.strain(t_new)
        return replace(state, eps=eps_new, v=(eps_new - state.eps) / dt, t=t_new)

    eps_half = state.eps + 0.5 * dt * state.v
    force = loading.force(state.t + 0.5 * dt) - model.E * (eps_half - state.eps_p)
    v_new = state.v + dt * force / model.m
    return replace(state, eps=eps_half + 0.5 * dt * v_new, v=v_new, t=t_new)


def _localize_yield(model: MaterialModel, state: MaterialState, dt: float,
                    loading: LoadingProgram, tol: float) -> Tuple[MaterialState, float]:
    """Advance elastically to the first crossing of f = 0 inside the step.

    Returns the state at the crossing and the time left in the step; the
    state is returned unchanged when the step starts on the surface or stays
    admissible over the whole step.
    """
    crit = model.criterion
    f_start = crit.evaluate(stress(model, state))

    def f_at(theta: float) -> float:
        if theta <= 0.0:
            return f_start
        return crit.evaluate(stress(model, elastic_trial_step(model, state, theta * dt, loading)))

    if f_start >= -tol or f_at(1.0) <= tol:
        return state, dt

    theta = bisect(f_at, 0.0, 1.0, xtol=LOCALIZATION_XTOL)
    # stay on the admissible side of the crossing
    while theta > 0.0 and f_at(theta) > tol:
        theta = max(theta - LOCALIZATION_XTOL, 0.0)
    if theta == 0.0:
        return state, dt
    logger.debug("yield crossing localized at t = %.12g", state.t + theta * dt)
    return elastic_trial_step(model, state, theta * dt, loading), (1.0 - theta) * dt


def _apply_jump(model: MaterialModel, trial: MaterialState, z_trial: GeneralizedStress,
                z_post: GeneralizedStress, flow: FlowResult, viscous: bool,
                tol: float) -> Tuple[MaterialState, PlasticEvent]:
    """Update the internal variables by the flow and record the event."""
    z_mean = GeneralizedStress(
        sigma=0.5 * (z_trial.sigma + z_post.sigma),
        beta_i=0.5 * (z_trial.beta_i + z_post.beta_i),
        beta_k=0.5 * (z_trial.beta_k + z_post.beta_k),
        T=z_post.T,
    )
    released = pairing(z_mean, flow)
    if viscous:
        surface = pairing(z_post, flow)
    else:
        surface = dissipation(model.criterion, z_post, flow, tol)

    dS_e = dS_p = gamma = 0.0
    if model.is_thermo:
        dS_e, dS_p = entropy_jumps(model, z_mean, flow)
        gamma = entropy_production(dS_e, dS_p, tol)

    momentum = trial.momentum(model.m)
    new_state = replace(
        trial,
        eps_p=trial.eps_p + flow.d_eps_p,
        xi_i=trial.xi_i + flow.d_xi_i,
        xi_k=trial.xi_k + flow.d_xi_k,
        S_e=trial.S_e + dS_e,
        S_p=trial.S_p + dS_p,
    )
    event = PlasticEvent(
        t=trial.t,
        lam=flow.lam,
        d_eps_p=flow.d_eps_p,
        d_xi_i=flow.d_xi_i,
        d_xi_k=flow.d_xi_k,
        dS_e=dS_e,
        dS_p=dS_p,
        dissipated=released,
        sigma_at_event=z_post.sigma,
        momentum_before=momentum,
        momentum_after=new_state.momentum(model.m),
        beta_i_at_event=z_post.beta_i,
        beta_k_at_event=z_post.beta_k,
        surface_dissipation=surface,
        f_after=model.criterion.evaluate(z_post),
        gamma=gamma,
    )
    return new_state, event


def step(model: MaterialModel, state: MaterialState, dt: float, loading: LoadingProgram,
         localization: EventLocalization = EventLocalization.PER_STEP,
         viscosity: float = 0.0,
         tol: float = DEFAULT_TOL) -> Tuple[MaterialState, Optional[PlasticEvent]]:
    """One predictor-corrector step; returns the new state and the event, if any."""
    if EventLocalization(localization) is EventLocalization.BISECTION:
        state, dt = _localize_yield(model, state, dt, loading, tol)

    trial = elastic_trial_step(model, state, dt, loading)
    z_trial = stress(model, trial)
    if viscosity > 0.0:
        flow, z_post = viscoplastic_return_map(
            model.criterion, z_trial, viscosity, dt, model.E, model.K, model.H)
    else:
        flow, z_post = project_return_map(
            model.criterion, z_trial, model.E, model.K, model.H, tol)

    if flow.lam == 0.0:
        return trial, None
    return _apply_jump(model, trial, z_trial, z_post, flow, viscosity > 0.0, tol)
