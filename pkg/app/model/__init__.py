"""
Model core for the double Bragg diffraction toolkit

Dimensionless unit system with SI conversion, pulse envelopes, detuning
profiles, polarization errors, the lattice coupling factor and the
few-level model interface shared by every model tier. JSON documents for
pulses and detuning live in ``app.model.documents``.
"""

from .units import (
    Direction,
    Quantity,
    SiContext,
    UnitSystem,
    si_convert,
    QUASI_BRAGG_RABI_LIMIT,
    QUASI_BRAGG_DETUNING_LIMIT,
)
from .pulses import PulseEnvelope, PulseKind, default_window, envelope_value, window_covers_pulse
from .detuning import (
    DEFAULT_DETUNING_BOUND,
    DetuningKind,
    DetuningProfile,
    PolarizationError,
    coupling_factor,
    detuning_value,
)
from .hamiltonian import FewLevelModel

__all__ = [
    'Direction',
    'Quantity',
    'SiContext',
    'UnitSystem',
    'si_convert',
    'QUASI_BRAGG_RABI_LIMIT',
    'QUASI_BRAGG_DETUNING_LIMIT',
    'PulseEnvelope',
    'PulseKind',
    'default_window',
    'envelope_value',
    'window_covers_pulse',
    'DEFAULT_DETUNING_BOUND',
    'DetuningKind',
    'DetuningProfile',
    'PolarizationError',
    'coupling_factor',
    'detuning_value',
    'FewLevelModel',
]
