"""
Loading programs driving the material point: free motion, an external force
history, or a prescribed strain table.
"""
import math
from abc import ABC, abstractmethod
from typing import Any, Dict, Sequence, Tuple, Type

import numpy as np

from criteria import InvalidParameterError


class LoadingProgram(ABC):
    """Base class for all loading programs."""

    kind: str = ""

    @property
    def prescribes_strain(self) -> bool:
        return False

    def force(self, t: float) -> float:
        """External force per unit area on the right-hand side of m eps'' + sigma = F."""
        return 0.0

    def strain(self, t: float) -> float:
        raise NotImplementedError(f"{self.kind} loading does not prescribe strain")

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Serializable form, as accepted by LoadingFactory.from_dict."""


class FreeLoading(LoadingProgram):
    """Evolution from the initial conditions only."""

    kind = "free"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind}


class ExternalForce(LoadingProgram):
    """Harmonic force F(t) = amplitude * cos(angular_frequency * t)."""

    kind = "external_force"

    def __init__(self, amplitude: float, angular_frequency: float = 0.0):
        if angular_frequency < 0:
            raise InvalidParameterError(
                f"angular_frequency must be >= 0, got {angular_frequency}")
        self.amplitude = float(amplitude)
        self.angular_frequency = float(angular_frequency)

    def force(self, t: float) -> float:
        return self.amplitude * math.cos(self.angular_frequency * t)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "amplitude": self.amplitude,
                "angular_frequency": self.angular_frequency}


class PrescribedStrain(LoadingProgram):
    """Piecewise-linear strain history through (t, eps) knots.

    The strain is held at the end values outside the knot range.
    """

    kind = "prescribed_strain"

    def __init__(self, knots: Sequence[Tuple[float, float]]):
        if len(knots) < 2:
            raise InvalidParameterError("prescribed_strain needs at least two knots")
        times = np.array([float(t) for t, _ in knots])
        if np.any(np.diff(times) <= 0):
            raise InvalidParameterError(
                f"prescribed_strain knots must be strictly increasing in t, got {times.tolist()}")
        self.times = times
        self.values = np.array([float(eps) for _, eps in knots])

    @property
    def prescribes_strain(self) -> bool:
        return True

    def strain(self, t: float) -> float:
        return float(np.interp(t, self.times, self.values))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind,
                "knots": [[float(t), float(eps)] for t, eps in zip(self.times, self.values)]}


class LoadingFactory:
    """Factory class for loading programs."""

    _loading_classes: Dict[str, Type[LoadingProgram]] = {
        'free': FreeLoading,
        'external_force': ExternalForce,
        'prescribed_strain': PrescribedStrain,
    }

    @classmethod
    def create_loading(cls, kind: str, **kwargs) -> LoadingProgram:
        """Create a loading program of the given kind."""
        kind = kind.lower()

        if kind not in cls._loading_classes:
            raise InvalidParameterError(
                f"Unknown loading: {kind}. Available: {cls.get_available_loadings()}")

        return cls._loading_classes[kind](**kwargs)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> LoadingProgram:
        params = dict(data)
        return cls.create_loading(params.pop("kind", "free"), **params)

    @classmethod
    def get_available_loadings(cls) -> list:
        return list(cls._loading_classes.keys())
