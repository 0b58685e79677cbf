"""
Integrator package: loading programs, the predictor-corrector step and the time loop.
"""

from .loading import (
    ExternalForce,
    FreeLoading,
    LoadingFactory,
    LoadingProgram,
    PrescribedStrain,
)
from .trajectory import ALL_COLUMNS, SAMPLE_COLUMNS, WORK_COLUMNS, PlasticEvent, Trajectory
from .stepper import EventLocalization, elastic_trial_step, step
from .simulation import SimConfig, StepMonitor, Tolerances, simulate

__all__ = [
    'ExternalForce',
    'FreeLoading',
    'LoadingFactory',
    'LoadingProgram',
    'PrescribedStrain',
    'ALL_COLUMNS',
    'SAMPLE_COLUMNS',
    'WORK_COLUMNS',
    'PlasticEvent',
    'Trajectory',
    'EventLocalization',
    'elastic_trial_step',
    'step',
    'SimConfig',
    'StepMonitor',
    'Tolerances',
    'simulate',
]
