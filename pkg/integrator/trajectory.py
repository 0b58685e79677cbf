"""
Records produced by the integrator: plastic events and sampled trajectories.
"""
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from criteria import InvalidParameterError
from models import MaterialState
from .loading import LoadingProgram

SAMPLE_COLUMNS = (
    "t", "eps", "v", "eps_p", "xi_i", "xi_k", "sigma", "beta_i", "beta_k",
    "E_tot", "D_cum", "S_e", "S_p", "gamma_cum",
)
# work done by the loading; kept beside the samples, not among them
WORK_COLUMNS = ("t", "W_cum")
ALL_COLUMNS = SAMPLE_COLUMNS + ("W_cum",)

STATE_FIELDS = ("eps", "v", "eps_p", "xi_i", "xi_k", "S_e", "S_p", "t")


@dataclass
class PlasticEvent:
    """One jump of the internal variables at the end of a time step.

    ``dissipated`` is the mechanical energy released by the jump, i.e. the
    pairing of the flow with the jump-averaged generalized stress;
    ``surface_dissipation`` is the same pairing at the corrected point.
    """
    t: float
    lam: float
    d_eps_p: float
    d_xi_i: float
    d_xi_k: float
    dS_e: float
    """Elastic entropy jump; T * dS_e pairs with ``dissipated`` at the jump-averaged stress."""
    dS_p: float
    dissipated: float
    sigma_at_event: float
    momentum_before: float
    momentum_after: float
    beta_i_at_event: float = 0.0
    beta_k_at_event: float = 0.0
    surface_dissipation: float = 0.0
    f_after: float = 0.0
    gamma: float = 0.0

    @classmethod
    def columns(cls) -> List[str]:
        return [f.name for f in fields(cls)]


@dataclass
class Trajectory:
    """Sampled time series of states and ledger quantities, plus the event list."""
    data: Dict[str, List[float]] = field(
        default_factory=lambda: {name: [] for name in ALL_COLUMNS})
    events: List[PlasticEvent] = field(default_factory=list)
    loading: Optional[LoadingProgram] = None
    viscosity: float = 0.0

    def record(self, state: MaterialState, sigma: float, beta_i: float, beta_k: float,
               E_tot: float, D_cum: float, gamma_cum: float, W_cum: float = 0.0):
        values = (state.t, state.eps, state.v, state.eps_p, state.xi_i, state.xi_k,
                  sigma, beta_i, beta_k, E_tot, D_cum, state.S_e, state.S_p,
                  gamma_cum, W_cum)
        for name, value in zip(ALL_COLUMNS, values):
            self.data[name].append(value)

    def __len__(self) -> int:
        return len(self.data["t"])

    def column(self, name: str) -> np.ndarray:
        return np.asarray(self.data[name], dtype=float)

    def state(self, index: int) -> MaterialState:
        return MaterialState(**{name: self.data[name][index] for name in STATE_FIELDS})

    def states(self) -> List[MaterialState]:
        return [self.state(i) for i in range(len(self))]

    def to_frame(self) -> pd.DataFrame:
        """The sample columns, in their fixed order."""
        return pd.DataFrame({name: self.column(name) for name in SAMPLE_COLUMNS},
                            columns=list(SAMPLE_COLUMNS))

    def work_frame(self) -> pd.DataFrame:
        return pd.DataFrame({name: self.column(name) for name in WORK_COLUMNS},
                            columns=list(WORK_COLUMNS))

    def events_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(event) for event in self.events],
                            columns=PlasticEvent.columns())

    @classmethod
    def from_frames(cls, samples: pd.DataFrame, events: Optional[pd.DataFrame] = None,
                    work: Optional[pd.DataFrame] = None) -> "Trajectory":
        """Rebuild from sample, event and work frames.

        Every sample column is required; without a work frame W_cum is zero.
        Non-numeric cells raise ValueError.
        """
        missing = [name for name in SAMPLE_COLUMNS if name not in samples.columns]
        if missing:
            raise InvalidParameterError(f"trajectory is missing columns {missing}")
        traj = cls()
        for name in SAMPLE_COLUMNS:
            traj.data[name] = samples[name].astype(float).tolist()
        if work is None:
            traj.data["W_cum"] = [0.0] * len(samples)
        elif len(work) != len(samples) or "W_cum" not in work.columns:
            raise InvalidParameterError(
                f"work table has {len(work)} rows and columns {list(work.columns)}, "
                f"expected {len(samples)} rows of {list(WORK_COLUMNS)}")
        else:
            traj.data["W_cum"] = work["W_cum"].astype(float).tolist()
        if events is not None:
            if list(events.columns) != PlasticEvent.columns():
                raise InvalidParameterError(
                    f"events table has columns {list(events.columns)}, "
                    f"expected {PlasticEvent.columns()}")
            for row in events.to_dict(orient="records"):
                traj.events.append(PlasticEvent(**{k: float(v) for k, v in row.items()}))
        return traj
