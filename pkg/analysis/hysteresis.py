"""
Stress/strain loop extraction and branch tangents for cycled trajectories.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from criteria import PlasticityError
from integrator import Trajectory
from models import MaterialModel


class InsufficientCyclingError(PlasticityError):
    """Raised when a trajectory has no strain reversal to build a loop from."""


@dataclass
class Branch:
    """A run of consecutive steps sharing the same kind and strain direction.

    ``start`` and ``stop`` are sample indices; the branch covers steps
    start -> start+1, ..., stop-1 -> stop.
    """
    kind: str
    direction: int
    start: int
    stop: int
    slope: float = float("nan")

    @property
    def n_steps(self) -> int:
        return self.stop - self.start


@dataclass
class HysteresisResult:
    points: np.ndarray
    branches: List[Branch] = field(default_factory=list)
    elastic_slope: float = float("nan")
    plastic_slope: float = float("nan")
    n_reversals: int = 0

    def branches_of(self, kind: str) -> List[Branch]:
        return [b for b in self.branches if b.kind == kind]


def _step_kinds(eps: np.ndarray, eps_p: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    d_eps = np.diff(eps)
    plastic = np.diff(eps_p) != 0.0
    return np.sign(d_eps).astype(int), np.where(plastic, "plastic", "elastic")


def _fit_slope(eps: np.ndarray, sigma: np.ndarray) -> float:
    if len(eps) < 2 or np.ptp(eps) == 0.0:
        return float("nan")
    return float(np.polyfit(eps, sigma, 1)[0])


def _weighted_slope(branches: List[Branch]) -> float:
    fitted = [b for b in branches if not np.isnan(b.slope)]
    if not fitted:
        return float("nan")
    weights = np.array([b.n_steps for b in fitted], dtype=float)
    return float(np.average([b.slope for b in fitted], weights=weights))


def hysteresis(traj: Trajectory) -> HysteresisResult:
    """Split the (eps, sigma) path into branches and fit a tangent to each.

    The first step of a plastic branch starts elastic and ends on the
    surface, so plastic tangents are fitted from the second step on.
    Steps with no strain increment are ignored.
    """
    eps = traj.column("eps")
    sigma = traj.column("sigma")
    eps_p = traj.column("eps_p")
    if len(eps) < 2:
        raise InsufficientCyclingError("trajectory has fewer than two samples")

    directions, kinds = _step_kinds(eps, eps_p)
    moving = np.flatnonzero(directions)
    n_reversals = int(np.count_nonzero(np.diff(directions[moving]) != 0)) if moving.size else 0
    if n_reversals == 0:
        raise InsufficientCyclingError(
            "no strain reversal found; drive the run with a cycling strain program")

    branches: List[Branch] = []
    for n in moving:
        last = branches[-1] if branches else None
        if (last is not None and last.stop == n and last.kind == kinds[n]
                and last.direction == directions[n]):
            last.stop = n + 1
        else:
            branches.append(Branch(str(kinds[n]), int(directions[n]), int(n), int(n) + 1))

    for branch in branches:
        first = branch.start + 1 if branch.kind == "plastic" else branch.start
        branch.slope = _fit_slope(eps[first:branch.stop + 1], sigma[first:branch.stop + 1])

    return HysteresisResult(
        points=np.column_stack([eps, sigma]),
        branches=branches,
        elastic_slope=_weighted_slope([b for b in branches if b.kind == "elastic"]),
        plastic_slope=_weighted_slope([b for b in branches if b.kind == "plastic"]),
        n_reversals=n_reversals,
    )


def yield_window(traj: Trajectory, model: MaterialModel) -> Tuple[np.ndarray, np.ndarray]:
    """Lower and upper yield stresses [beta_k - r, beta_k + r] at every sample, r = sigma_Y - beta_i."""
    radius = model.yield_stress - traj.column("beta_i")
    beta_k = traj.column("beta_k")
    return beta_k - radius, beta_k + radius


def reverse_yield_range(traj: Trajectory) -> Optional[float]:
    """Stress excursion between the last forward plastic step and the first reverse one.

    Returns None when the trajectory never yields in both directions.
    """
    result = hysteresis(traj)
    sigma = traj.column("sigma")
    plastic = result.branches_of("plastic")
    for forward, reverse in zip(plastic, plastic[1:]):
        if reverse.direction == -forward.direction:
            return float(abs(sigma[forward.stop] - sigma[reverse.start + 1]))
    return None
