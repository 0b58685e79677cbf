"""
Models package for material parameters, state and constitutive functions.
"""

from .material import MaterialModel, MaterialState
from .constitutive import (
    dissipation_split,
    entropy_jumps,
    entropy_production,
    free_energy,
    hardening_potential,
    kinetic_energy,
    lagrangian,
    mechanical_energy,
    stored_energy,
    stress,
    total_energy,
)

__all__ = [
    'MaterialModel',
    'MaterialState',
    'dissipation_split',
    'entropy_jumps',
    'entropy_production',
    'free_energy',
    'hardening_potential',
    'kinetic_energy',
    'lagrangian',
    'mechanical_energy',
    'stored_energy',
    'stress',
    'total_energy',
]
