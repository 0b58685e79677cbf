"""
Analysis package: ledger auditing, hysteresis extraction and convergence studies.
"""

from .ledger import (
    CLAUSES,
    ClauseResult,
    LedgerMonitor,
    LedgerReport,
    audit_trajectory,
    released_energy,
)
from .hysteresis import (
    Branch,
    HysteresisResult,
    InsufficientCyclingError,
    hysteresis,
    reverse_yield_range,
    yield_window,
)
from .convergence import (
    ConvergenceTable,
    harmonic_solution,
    integrator_order_study,
    viscous_convergence,
)

__all__ = [
    'CLAUSES',
    'ClauseResult',
    'LedgerMonitor',
    'LedgerReport',
    'audit_trajectory',
    'released_energy',
    'Branch',
    'HysteresisResult',
    'InsufficientCyclingError',
    'hysteresis',
    'reverse_yield_range',
    'yield_window',
    'ConvergenceTable',
    'harmonic_solution',
    'integrator_order_study',
    'viscous_convergence',
]
