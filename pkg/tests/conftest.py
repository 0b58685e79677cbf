"""Shared fixtures: material models and trajectories reused across test modules."""
from pathlib import Path

import pytest

from integrator import FreeLoading, PrescribedStrain, SimConfig, simulate
from models import MaterialModel, MaterialState

ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = ROOT / "configs"

CYCLE_KNOTS = [(0.0, 0.0), (1.0, 0.1), (2.0, -0.1), (3.0, 0.1)]


def free_config(model: MaterialModel, eps0: float = 1.0, v0: float = 0.0,
                dt: float = 1e-4, t_end: float = 6.0, stride: int = 10) -> SimConfig:
    return SimConfig(model=model, dt=dt, t_end=t_end,
                     initial=MaterialState(eps=eps0, v=v0),
                     loading=FreeLoading(), stride=stride)


def cycling_config(model: MaterialModel, knots=CYCLE_KNOTS, dt: float = 1e-3) -> SimConfig:
    return SimConfig(model=model, dt=dt, t_end=knots[-1][0],
                     loading=PrescribedStrain(knots))


@pytest.fixture(scope="session")
def perfect_model():
    return MaterialModel(E=30.0, m=0.82, sigma_Y0=1.0, regime="perfect")


@pytest.fixture(scope="session")
def isotropic_model():
    return MaterialModel(E=30.0, m=0.85, sigma_Y0=1.0, regime="isotropic", K=50.0)


@pytest.fixture(scope="session")
def kinematic_model():
    return MaterialModel(E=30.0, m=0.81, sigma_Y0=1.0, regime="kinematic", H=35.0)


@pytest.fixture(scope="session")
def thermo_model():
    return MaterialModel(E=30.0, m=0.82, sigma_Y0=30.0, regime="thermo_perfect",
                         omega=0.001, T0=300.0, T_fixed=300.0)


@pytest.fixture(scope="session")
def perfect_free_traj(perfect_model):
    """Perfect-plastic free vibration from eps(0) = 1."""
    return simulate(free_config(perfect_model))


@pytest.fixture(scope="session")
def isotropic_free_traj(isotropic_model):
    return simulate(free_config(isotropic_model))


@pytest.fixture(scope="session")
def kinematic_free_traj(kinematic_model):
    return simulate(free_config(kinematic_model))


@pytest.fixture(scope="session")
def thermo_free_traj(thermo_model):
    return simulate(free_config(thermo_model, eps0=0.0, v0=8.0, t_end=4.0))
