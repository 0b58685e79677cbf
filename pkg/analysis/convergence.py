"""
Convergence studies: the vanishing-viscosity limit and the elastic integrator order.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
import pandas as pd

from criteria import CriterionKind, InvalidParameterError
from integrator import FreeLoading, SimConfig, simulate
from models import MaterialModel, MaterialState

logger = logging.getLogger("nonsmooth_plast.analysis")


@dataclass
class ConvergenceTable:
    """Sup-norm errors against a reference, one row per parameter value."""
    parameter: str
    values: List[float] = field(default_factory=list)
    errors: List[float] = field(default_factory=list)

    def add(self, value: float, error: float):
        self.values.append(float(value))
        self.errors.append(float(error))

    @property
    def rows(self) -> List[tuple]:
        return list(zip(self.values, self.errors))

    @property
    def order(self) -> float:
        """Slope of log(error) against log(value), over rows with a nonzero error."""
        values = np.asarray(self.values)
        errors = np.asarray(self.errors)
        mask = (values > 0) & (errors > 0)
        if np.count_nonzero(mask) < 2:
            return float("nan")
        return float(np.polyfit(np.log(values[mask]), np.log(errors[mask]), 1)[0])

    @property
    def is_monotone(self) -> bool:
        """Errors decrease (weakly) as the parameter decreases."""
        order = np.argsort(self.values)[::-1]
        errors = np.asarray(self.errors)[order]
        return bool(np.all(np.diff(errors) <= 0.0))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({self.parameter: self.values, "deviation": self.errors})

    def to_text(self) -> str:
        lines = [f"{self.parameter:>12}  {'deviation':>14}"]
        lines += [f"{v:>12.4g}  {e:>14.6e}" for v, e in self.rows]
        lines.append(f"fitted order: {self.order:.3f}")
        return "\n".join(lines)


def viscous_convergence(config: SimConfig, etas: Sequence[float]) -> ConvergenceTable:
    """Sup-norm deviation of eps_p(t) from the rate-independent run, for each viscosity.

    Every run shares the time grid of ``config``; the reference is ``config``
    with viscosity 0.
    """
    if not etas:
        raise InvalidParameterError("viscous_convergence needs at least one viscosity")
    if any(eta <= 0 for eta in etas):
        raise InvalidParameterError(f"viscosities must be > 0, got {list(etas)}")

    reference = simulate(config.with_overrides(viscosity=0.0)).column("eps_p")
    table = ConvergenceTable(parameter="eta")
    for eta in etas:
        eps_p = simulate(config.with_overrides(viscosity=float(eta))).column("eps_p")
        deviation = float(np.max(np.abs(eps_p - reference)))
        logger.info("eta=%g: sup |eps_p - eps_p(eta=0)| = %.6e", eta, deviation)
        table.add(eta, deviation)
    return table


def harmonic_solution(model: MaterialModel, initial: MaterialState, t: np.ndarray) -> np.ndarray:
    """Closed-form free elastic motion about the plastic strain of ``initial``."""
    w = model.natural_frequency
    tau = t - initial.t
    return (initial.eps_p + (initial.eps - initial.eps_p) * np.cos(w * tau)
            + initial.v / w * np.sin(w * tau))


def integrator_order_study(E: float = 30.0, m: float = 0.82, eps0: float = 1.0,
                           v0: float = 0.0, t_end: float = 2.0,
                           dts: Sequence[float] = (1e-3, 5e-4)) -> ConvergenceTable:
    """Position error of the elastic stepper against harmonic motion, per dt.

    The yield stress is set well above the peak elastic stress so no event
    occurs.
    """
    peak = E * (abs(eps0) + abs(v0) / np.sqrt(E / m))
    model = MaterialModel(E=E, m=m, sigma_Y0=10.0 * peak + 1.0, regime=CriterionKind.PERFECT)
    initial = MaterialState(eps=eps0, v=v0)
    table = ConvergenceTable(parameter="dt")
    for dt in dts:
        traj = simulate(SimConfig(model=model, dt=dt, t_end=t_end, initial=initial,
                                  loading=FreeLoading()))
        exact = harmonic_solution(model, initial, traj.column("t"))
        table.add(dt, float(np.max(np.abs(traj.column("eps") - exact))))
    return table
