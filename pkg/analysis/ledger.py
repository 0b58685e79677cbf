"""
Energy, entropy and complementarity ledgers recomputed from raw trajectory samples.

The auditor only trusts the sampled states, the recorded jumps of each event
and the model parameters; integrator-side ledger columns (E_tot, D_cum, ...)
are checked against the recomputation, never used in place of it.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from criteria import FlowResult, GeneralizedStress, kkt_check
from integrator import FreeLoading, LoadingProgram, PlasticEvent, Tolerances, Trajectory
from models import MaterialModel, mechanical_energy, stress, total_energy

logger = logging.getLogger("nonsmooth_plast.analysis")

CLAUSES = (
    "energy_balance", "columns", "dissipation", "event_consistency", "kkt",
    "admissibility", "momentum", "entropy", "thermo_energy",
)


@dataclass
class ClauseResult:
    """Residual of one ledger clause against its tolerance."""
    name: str
    passed: bool
    value: float
    tolerance: float
    note: str = ""


@dataclass
class LedgerReport:
    """Outcome of an audit; passes only when every clause is within tolerance."""
    clauses: Dict[str, ClauseResult] = field(default_factory=dict)
    energy_residual: float = 0.0
    kkt_residual: float = 0.0
    admissibility_violation: float = 0.0
    min_event_dissipation: float = 0.0
    min_gamma: float = 0.0
    momentum_residual: float = 0.0
    energy_drift: float = 0.0
    n_samples: int = 0
    n_events: int = 0

    @property
    def passed(self) -> bool:
        return all(clause.passed for clause in self.clauses.values())

    @property
    def failed_clauses(self) -> List[str]:
        return [name for name, clause in self.clauses.items() if not clause.passed]

    def summary(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "failed_clauses": self.failed_clauses,
            "n_samples": self.n_samples,
            "n_events": self.n_events,
            "energy_residual": self.energy_residual,
            "kkt_residual": self.kkt_residual,
            "admissibility_violation": self.admissibility_violation,
            "min_event_dissipation": self.min_event_dissipation,
            "min_gamma": self.min_gamma,
            "momentum_residual": self.momentum_residual,
            "energy_drift": self.energy_drift,
        }

    def to_key_values(self) -> str:
        """One ``key=value`` per line, for machine consumption."""
        lines = [f"passed={int(self.passed)}",
                 f"n_samples={self.n_samples}",
                 f"n_events={self.n_events}",
                 f"energy_drift={self.energy_drift:.17g}"]
        for name, clause in self.clauses.items():
            lines.append(f"{name}.passed={int(clause.passed)}")
            lines.append(f"{name}.value={clause.value:.17g}")
            lines.append(f"{name}.tolerance={clause.tolerance:.17g}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            "LEDGER REPORT",
            "=" * 60,
            f"Samples: {self.n_samples} | Events: {self.n_events} | "
            f"Energy drift: {self.energy_drift:.3e}",
            "-" * 60,
        ]
        for name, clause in self.clauses.items():
            mark = "✓" if clause.passed else "✗"
            note = f"  ({clause.note})" if clause.note else ""
            lines.append(f"{mark} {name:<18} {clause.value:.3e} <= {clause.tolerance:.1e}{note}")
        lines.append("=" * 60)
        lines.append("PASSED" if self.passed else f"FAILED: {', '.join(self.failed_clauses)}")
        return "\n".join(lines)


def released_energy(model: MaterialModel, event: PlasticEvent) -> float:
    """Energy released by a jump, rebuilt from the corrected stresses and the jumps.

    The trial stresses are sigma + E d_eps_p, beta_i + K d_xi_i and
    beta_k + H d_xi_k, so the jump-averaged pairing needs no integrator state.
    """
    return ((event.sigma_at_event + 0.5 * model.E * event.d_eps_p) * event.d_eps_p
            + (event.beta_i_at_event + 0.5 * model.K * event.d_xi_i) * event.d_xi_i
            + (event.beta_k_at_event + 0.5 * model.H * event.d_xi_k) * event.d_xi_k)


def _energy_scale(energies: np.ndarray) -> float:
    if energies.size and energies[0] > 0:
        return float(energies[0])
    peak = float(np.max(np.abs(energies))) if energies.size else 0.0
    return peak if peak > 0 else 1.0


def _force_work(traj: Trajectory, loading: LoadingProgram) -> np.ndarray:
    """External-force work by the midpoint rule on the sampled strains."""
    t = traj.column("t")
    work = np.zeros_like(t)
    if len(t) > 1:
        t_mid = 0.5 * (t[1:] + t[:-1])
        forces = np.array([loading.force(tm) for tm in t_mid])
        work[1:] = np.cumsum(forces * np.diff(traj.column("eps")))
    return work


def _strain_work(traj: Trajectory, model: MaterialModel, loading: LoadingProgram) -> np.ndarray:
    """Stress power plus kinetic energy supplied by a strain program.

    Between breakpoints eps_p is frozen, so the elastic work is exactly the
    trapezoid 1/2 (sigma_a + sigma_b) d_eps. Breakpoints are the samples and
    the event times, where the strain is read off the program and eps_p
    jumps by the recorded d_eps_p. Exact at any stride.
    """
    t, eps, v = traj.column("t"), traj.column("eps"), traj.column("v")
    E = model.E
    work = np.zeros_like(t)
    if len(t) < 2:
        return work
    eps_p = float(traj.column("eps_p")[0])
    events = iter(traj.events)
    pending = next(events, None)
    total = 0.0
    for n in range(1, len(t)):
        eps_a = eps[n - 1]
        while pending is not None and pending.t <= t[n]:
            eps_k = loading.strain(pending.t)
            total += 0.5 * E * ((eps_a - eps_p) + (eps_k - eps_p)) * (eps_k - eps_a)
            eps_p += pending.d_eps_p
            eps_a = eps_k
            pending = next(events, None)
        total += 0.5 * E * ((eps_a - eps_p) + (eps[n] - eps_p)) * (eps[n] - eps_a)
        total += 0.5 * model.m * (v[n] ** 2 - v[n - 1] ** 2)
        work[n] = total
    return work


def _work_input(traj: Trajectory, model: MaterialModel) -> np.ndarray:
    """Energy supplied by the loading up to every sample."""
    loading = traj.loading or FreeLoading()
    if loading.prescribes_strain:
        return _strain_work(traj, model, loading)
    return _force_work(traj, loading)


def _clause(clauses: Dict[str, ClauseResult], name: str, value: float, tolerance: float,
            note: str = "", applicable: bool = True):
    if not applicable:
        clauses[name] = ClauseResult(name, True, 0.0, tolerance, note or "not applicable")
        return
    clauses[name] = ClauseResult(name, bool(value <= tolerance), float(value), tolerance, note)


def audit_trajectory(traj: Trajectory, model: MaterialModel,
                     tolerances: Optional[Tolerances] = None) -> LedgerReport:
    """Recompute every ledger clause from the raw samples and report residuals."""
    tol = tolerances or Tolerances()
    crit = model.criterion
    viscous = traj.viscosity > 0.0
    report = LedgerReport(n_samples=len(traj), n_events=len(traj.events))
    clauses: Dict[str, ClauseResult] = {}

    states = traj.states()
    E_tot = np.array([total_energy(model, s) for s in states])
    E_mech = np.array([mechanical_energy(model, s) for s in states])
    scale = _energy_scale(E_mech)
    work = _work_input(traj, model)
    times = traj.column("t")

    events = traj.events
    released = np.array([released_energy(model, e) for e in events])
    recorded = np.array([e.dissipated for e in events])
    event_times = np.array([e.t for e in events])
    n_before = np.searchsorted(event_times, times, side="right")
    D_recomputed = np.concatenate([[0.0], np.cumsum(released)])[n_before]

    # Energy balance: E_mech(t) + D(t) = E_mech(0) + W(t)
    balance = np.abs(E_mech + D_recomputed - E_mech[0] - work) / scale if len(states) else np.zeros(0)
    report.energy_residual = float(balance.max()) if balance.size else 0.0
    _clause(clauses, "energy_balance", report.energy_residual, tol.energy)
    if len(states):
        report.energy_drift = float(np.max(np.abs(E_tot - E_tot[0] - work)) / _energy_scale(E_tot))

    # Integrator-side columns against the recomputation
    if len(states):
        z = [stress(model, s) for s in states]
        column_residual = max(
            float(np.max(np.abs(traj.column("E_tot") - E_tot))) / _energy_scale(E_tot),
            float(np.max(np.abs(traj.column("sigma") - [zi.sigma for zi in z]))) / crit.sigma_Y0,
            float(np.max(np.abs(traj.column("beta_i") - [zi.beta_i for zi in z]))) / crit.sigma_Y0,
            float(np.max(np.abs(traj.column("beta_k") - [zi.beta_k for zi in z]))) / crit.sigma_Y0,
        )
    else:
        column_residual = 0.0
    _clause(clauses, "columns", column_residual, tol.energy)

    # Per-event dissipation: recorded vs rebuilt, nonnegative, cumulative column
    if len(events):
        mismatch = float(np.max(np.abs(released - recorded) / np.maximum(1.0, np.abs(released))))
        report.min_event_dissipation = float(released.min())
    else:
        mismatch = 0.0
    cumulative = float(np.max(np.abs(traj.column("D_cum") - D_recomputed)) / scale) if len(states) else 0.0
    negative = max(0.0, -report.min_event_dissipation)
    _clause(clauses, "dissipation", max(mismatch, cumulative, negative), tol.kkt)

    # Sample-to-sample jumps of the internal variables are the events in between
    consistency = 0.0
    if len(states) > 1:
        for name, attr in (("eps_p", "d_eps_p"), ("xi_i", "d_xi_i"), ("xi_k", "d_xi_k")):
            jumps = np.array([getattr(e, attr) for e in events])
            summed = np.concatenate([[0.0], np.cumsum(jumps)])[n_before]
            observed = traj.column(name) - traj.column(name)[0]
            consistency = max(consistency, float(np.max(np.abs(observed - summed))))
    _clause(clauses, "event_consistency", consistency, tol.kkt)

    # Kuhn-Tucker triplet at every corrected point
    kkt_worst = 0.0
    for event in events:
        z_post = GeneralizedStress(event.sigma_at_event, event.beta_i_at_event,
                                   event.beta_k_at_event, model.temperature)
        check = kkt_check(crit, z_post, FlowResult(lam=event.lam), tol.kkt)
        kkt_worst = max(kkt_worst, *check.residuals.values())
    report.kkt_residual = kkt_worst
    _clause(clauses, "kkt", kkt_worst, tol.kkt,
            note="viscous overstress" if viscous else "", applicable=not viscous)

    # Admissibility of every corrected sample (the initial state is uncorrected)
    if len(states) > 1:
        f_values = np.array([crit.evaluate(stress(model, s)) for s in states[1:]])
        report.admissibility_violation = max(0.0, float(f_values.max()))
    _clause(clauses, "admissibility", report.admissibility_violation, tol.admissibility,
            note="viscous overstress" if viscous else "", applicable=not viscous)

    # Momentum continuity across every jump
    momentum = 0.0
    for event in events:
        jump = abs(event.momentum_after - event.momentum_before)
        base = abs(event.momentum_before)
        momentum = max(momentum, jump / base if base > 0 else jump)
    report.momentum_residual = momentum
    _clause(clauses, "momentum", momentum, tol.momentum)

    # Entropy jumps, production and monotonicity (thermo regimes)
    if model.is_thermo:
        T = model.T_fixed
        gammas = np.array([e.dS_e + e.dS_p for e in events])
        report.min_gamma = float(gammas.min()) if gammas.size else 0.0
        entropy_residual = max(0.0, -report.min_gamma)
        for event, energy in zip(events, released):
            entropy_residual = max(
                entropy_residual,
                abs(event.dS_e * T - energy) / max(1.0, abs(energy)),
                abs(event.dS_p - event.lam * crit.d_f_dT()),
            )
        S_total = traj.column("S_e") + traj.column("S_p")
        if S_total.size > 1:
            entropy_residual = max(entropy_residual, max(0.0, -float(np.diff(S_total).min())))
        _clause(clauses, "entropy", entropy_residual, tol.entropy)

        thermo = np.abs(E_tot - E_tot[0] - work) / _energy_scale(E_tot) if len(states) else np.zeros(1)
        _clause(clauses, "thermo_energy", float(thermo.max()), tol.thermo_energy)
    else:
        _clause(clauses, "entropy", 0.0, tol.entropy, applicable=False,
                note="mechanical regime")
        _clause(clauses, "thermo_energy", 0.0, tol.thermo_energy, applicable=False,
                note="mechanical regime")

    report.clauses = {name: clauses[name] for name in CLAUSES}
    if report.passed:
        logger.info("ledger passed: %d samples, %d events", report.n_samples, report.n_events)
    else:
        logger.warning("ledger failed clauses: %s", report.failed_clauses)
    return report


class LedgerMonitor:
    """In-loop monitor for ``simulate``: tracks the worst yield value and dissipation."""

    def __init__(self, model: MaterialModel):
        self.model = model
        self.max_f = -np.inf
        self.min_dissipation = np.inf
        self.n_events = 0

    def __call__(self, state, event: Optional[PlasticEvent]):
        self.max_f = max(self.max_f, self.model.criterion.evaluate(stress(self.model, state)))
        if event is not None:
            self.n_events += 1
            self.min_dissipation = min(self.min_dissipation, event.dissipated)
