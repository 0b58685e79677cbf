"""
Simulation configuration and the time loop driving the predictor-corrector.
"""
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable, Dict, Optional, Sequence

from criteria import InvalidParameterError
from models import MaterialModel, MaterialState, stress, total_energy
from .loading import FreeLoading, LoadingProgram
from .stepper import EventLocalization, step
from .trajectory import PlasticEvent, Trajectory

logger = logging.getLogger("nonsmooth_plast.integrator")

# Called after every step with the new state and the event of that step, if any.
StepMonitor = Callable[[MaterialState, Optional[PlasticEvent]], None]


@dataclass(frozen=True)
class Tolerances:
    """Absolute (admissibility, kkt, entropy) and relative (energy, momentum) tolerances."""
    admissibility: float = 1e-9
    energy: float = 1e-6
    kkt: float = 1e-9
    momentum: float = 1e-12
    entropy: float = 1e-9
    thermo_energy: float = 1e-6

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to reproduce one trajectory."""
    model: MaterialModel
    dt: float = 1e-4
    t_end: float = 1.0
    initial: MaterialState = field(default_factory=MaterialState)
    loading: LoadingProgram = field(default_factory=FreeLoading)
    event_localization: EventLocalization = EventLocalization.PER_STEP
    stride: int = 1
    viscosity: float = 0.0
    tolerances: Tolerances = field(default_factory=Tolerances)

    # dt * sqrt(E / m) must stay below this for the explicit elastic stepper
    STABILITY_LIMIT = 2.0

    def validate(self):
        if self.dt <= 0:
            raise InvalidParameterError(f"dt must be > 0, got {self.dt}")
        if self.t_end <= self.initial.t:
            raise InvalidParameterError(
                f"t_end ({self.t_end}) must be greater than the initial time ({self.initial.t})")
        if int(self.stride) != self.stride or self.stride < 1:
            raise InvalidParameterError(f"stride must be a positive integer, got {self.stride}")
        if self.viscosity < 0:
            raise InvalidParameterError(f"viscosity must be >= 0, got {self.viscosity}")
        courant = self.dt * self.model.natural_frequency
        if courant >= self.STABILITY_LIMIT:
            raise InvalidParameterError(
                f"dt = {self.dt} violates the stability bound dt*sqrt(E/m) < "
                f"{self.STABILITY_LIMIT} (dt*sqrt(E/m) = {courant:.6g})")
        EventLocalization(self.event_localization)

    @property
    def n_steps(self) -> int:
        return int(math.ceil((self.t_end - self.initial.t) / self.dt - 1e-9))

    def with_overrides(self, **changes: Any) -> "SimConfig":
        return replace(self, **changes)


def _record(traj: Trajectory, model: MaterialModel, state: MaterialState,
            D_cum: float, gamma_cum: float, W_cum: float):
    z = stress(model, state)
    traj.record(state, z.sigma, z.beta_i, z.beta_k, total_energy(model, state),
                D_cum, gamma_cum, W_cum)


def simulate(config: SimConfig, monitors: Sequence[StepMonitor] = ()) -> Trajectory:
    """Integrate from the initial state to t_end, sampling every ``stride`` steps.

    Elastic steps run on bare floats with the same operations as
    ``elastic_trial_step``; a MaterialState is built only at samples, at
    events (where ``step`` takes over) and for monitors. Deterministic given
    the configuration.
    """
    config.validate()
    model = config.model
    loading = config.loading
    localization = EventLocalization(config.event_localization)
    tol = config.tolerances.admissibility
    viscosity = config.viscosity
    dt = config.dt
    half_dt = 0.5 * dt
    stride = config.stride

    traj = Trajectory(loading=loading, viscosity=viscosity)
    state = config.initial
    D_cum = gamma_cum = W_cum = 0.0
    _record(traj, model, state, D_cum, gamma_cum, W_cum)

    E, m, K, H = model.E, model.m, model.K, model.H
    f_yield = model.criterion.scalar_form(model.temperature)
    # viscoplastic_flow only stays elastic for f <= 0
    f_limit = 0.0 if viscosity > 0.0 else tol
    prescribed = loading.prescribes_strain
    external_force = loading.force
    eps, v, eps_p, t = state.eps, state.v, state.eps_p, state.t
    beta_i, beta_k = -K * state.xi_i, -H * state.xi_k

    n_steps = config.n_steps
    logger.info("simulating %s: %d steps of dt=%g, loading=%s",
                model.regime.value, n_steps, dt, loading.kind)
    for n in range(n_steps):
        t_new = t + dt
        if prescribed:
            eps_new = loading.strain(t_new)
            v_new = (eps_new - eps) / dt
        else:
            force_ext = external_force(t + half_dt)
            eps_half = eps + half_dt * v
            v_new = v + dt * (force_ext - E * (eps_half - eps_p)) / m
            eps_new = eps_half + half_dt * v_new

        event = None
        if f_yield(E * (eps_new - eps_p), beta_i, beta_k) <= f_limit:
            if monitors or (n + 1) % stride == 0 or n + 1 == n_steps:
                state = replace(state, eps=eps_new, v=v_new, t=t_new)
        else:
            state = replace(state, eps=eps, v=v, t=t)
            state, event = step(model, state, dt, loading, localization=localization,
                                viscosity=viscosity, tol=tol)
            eps_new, v_new, t_new = state.eps, state.v, state.t
            eps_p = state.eps_p
            beta_i, beta_k = -K * state.xi_i, -H * state.xi_k

        if not prescribed:
            W_cum += force_ext * (eps_new - eps)
        eps, v, t = eps_new, v_new, t_new
        if event is not None:
            traj.events.append(event)
            D_cum += event.dissipated
            gamma_cum += event.gamma
        for monitor in monitors:
            monitor(state, event)
        if (n + 1) % stride == 0 or n + 1 == n_steps:
            _record(traj, model, state, D_cum, gamma_cum, W_cum)

    logger.info("finished at t=%.6g with %d plastic events, D_cum=%.6g",
                t, len(traj.events), D_cum)
    return traj
