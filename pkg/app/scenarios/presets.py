"""
Registry of published pulse parameters and reproduction presets.

Every quoted tuple lives here so regression tests and reproductions read
from a single place. Bump PRESET_VERSION whenever a value changes.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from app.errors import UnknownFigureError

PRESET_VERSION = "1"


@dataclass(frozen=True)
class PulseTriple:
    """Gaussian pulse parameters (Ω_R, τ, t0) in recoil units"""
    omega_r: float
    tau: float
    t0: float = 0.0

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.omega_r, self.tau, self.t0


PULSES: Dict[str, PulseTriple] = {
    "polarization_reference": PulseTriple(2.0, 0.47),
    "doppler_reference": PulseTriple(2.0, 0.45),
    "selectivity": PulseTriple(1.0, 0.91),
    "pol_oct": PulseTriple(1.617, 0.583, 2.859),
    "doppler_oct": PulseTriple(2.079, 0.534, 2.463),
    "combined_text": PulseTriple(1.646, 0.788, 4.770),
    "combined_map": PulseTriple(1.264, 0.915, 4.065),
    "combined_cut": PulseTriple(2.230, 0.505, 2.970),
}

# Box pulse used for the duration trajectories
BOX_OMEGA = 2.0
BOX_DURATION_MAX = 10.0
BOX_DURATION_STEP = 0.05

# Constant detunings
DOPPLER_CONSTANT_DETUNING = 0.345
POLARIZATION_CONSTANT_DETUNING = 0.25
DELTA_OPT_EXPECTED = {0.0: 0.25, 0.1: 0.55, 0.2: 0.80, 0.3: 1.10}
DELTA_OPT_TOLERANCE = 0.05
DELTA_OPT_PEAK_EFFICIENCY = 0.999

# Robustness thresholds
ROBUST_EFFICIENCY = 0.995
ROBUST_EPSILON = 0.085
DS_PEAK_EFFICIENCY = 0.99976
DS_PEAK_EPSILON = 0.045
DS_PEAK_EPSILON_TOLERANCE = 0.01
DS_PEAK_TOLERANCE = 5e-4
TLS_EXACT_DEVIATION = 0.03
FEW_LEVEL_EXACT_DEVIATION = 5e-3
OCT_EXACT_DEVIATION = 5e-4
SELECTIVITY_HALF_WIDTH = 0.1
SELECTIVITY_TOLERANCE = 0.03
SWEEP_ASYMMETRY_SLOPE = 0.05

# Left/right port imbalance P(-1) - P(+1) for a plane wave at p = ±0.2, zero detuning
DOPPLER_ASYMMETRY_MOMENTUM = 0.2
DOPPLER_ASYMMETRY_MARGIN = 0.03

COMBINED_EFFICIENCY = 0.99
COMBINED_MOMENTUM = 0.18
COMBINED_EPSILON = 0.12
SIGMA05_MEAN_PORTS = 0.998
SIGMA05_WIDTH = 0.05
OCT_MEAN_PORTS = 0.998
DOPPLER_OCT_MEAN_EFFICIENCY = 0.995


@dataclass(frozen=True)
class FigurePreset:
    figure_id: str
    description: str
    campaign: Optional[str] = None
    slow: bool = False


FIGURES: Dict[str, FigurePreset] = {preset.figure_id: preset for preset in (
    FigurePreset("fig3", "box-pulse P(|1>) vs duration: TLS, RWA and exact"),
    FigurePreset("fig4a", "Gaussian P(|1>) vs width for several polarization errors"),
    FigurePreset("fig4b", "P(|1>) vs constant detuning at fixed Gaussian pulse; optimal detuning table"),
    FigurePreset("fig5", "port populations vs initial momentum at zero detuning", slow=True),
    FigurePreset("fig6", "first-cycle peak efficiency vs polarization error for three protocols"),
    FigurePreset("fig7", "final momentum packet for p0 = 0.2, sigma_p = 0.05", slow=True),
    FigurePreset("fig8a", "port populations vs momentum with constant Doppler detuning"),
    FigurePreset("fig8b", "port populations vs momentum with the Doppler linear sweep"),
    FigurePreset("appB", "box-pulse leakage into |2> against TLS deviation", slow=True),
    FigurePreset("appC", "momentum acceptance window at (1, 0.91)"),
    FigurePreset("pol_robustness", "detuning-sweep DBD robustness against polarization errors"),
    FigurePreset("pol_oct", "optimized detuning against polarization errors", campaign="pol_oct", slow=True),
    FigurePreset("doppler_oct", "optimized detuning against Doppler detuning", campaign="doppler_oct", slow=True),
    FigurePreset("combined_map", "OCT BS efficiency map over polarization error and momentum",
                 campaign="combined", slow=True),
    FigurePreset("sigma05", "summed port population for sigma_p = 0.05 packets", campaign="sigma05", slow=True),
)}


def figure_preset(figure_id: str) -> FigurePreset:
    try:
        return FIGURES[figure_id]
    except KeyError:
        raise UnknownFigureError(f"unknown figure id {figure_id!r}",
                                 {"figure": figure_id, "known": sorted(FIGURES)})


def box_durations(maximum: float = BOX_DURATION_MAX, step: float = BOX_DURATION_STEP) -> np.ndarray:
    return np.round(np.arange(0.0, maximum + 0.5 * step, step), 9)


def momentum_grid(limit: float = 1.0, step: float = 0.01, include_limit: bool = False) -> np.ndarray:
    """Momenta in [-limit, limit) (or closed when ``include_limit``)"""
    stop = limit + 0.5 * step if include_limit else limit - 0.5 * step
    return np.round(np.arange(-limit, stop, step), 9)


def polarization_grid(maximum: float = 0.3, step: float = 0.005) -> np.ndarray:
    return np.round(np.arange(0.0, maximum + 0.5 * step, step), 9)
