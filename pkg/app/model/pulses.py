"""
Pulse envelopes Ω(t) in recoil units.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from app.errors import InvalidParameterError
from app.model.units import QUASI_BRAGG_RABI_LIMIT

logger = logging.getLogger(__name__)

TimeLike = Union[float, np.ndarray]

# Gaussian windows extend this many τ on each side of the peak
GAUSSIAN_WINDOW_WIDTHS = 5.0


class PulseKind(str, Enum):
    GAUSSIAN = "gaussian"
    BOX = "box"


@dataclass(frozen=True)
class PulseEnvelope:
    """
    Two-photon Rabi envelope.

    Gaussian: Ω(t) = Ω_R exp(-(t - t0)² / (2τ²)).
    Box: Ω(t) = Ω on [0, τ) and zero elsewhere.
    """
    kind: PulseKind
    amplitude: float
    tau: float
    t0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise InvalidParameterError("pulse amplitude must be finite and non-negative",
                                        {"amplitude": self.amplitude})
        if not math.isfinite(self.tau) or self.tau <= 0:
            raise InvalidParameterError("pulse duration must be positive", {"tau": self.tau})
        if self.amplitude > QUASI_BRAGG_RABI_LIMIT:
            logger.warning(f"Rabi amplitude {self.amplitude} exceeds the Bragg limit "
                           f"{QUASI_BRAGG_RABI_LIMIT}; results enter the quasi-Bragg regime")

    @classmethod
    def gaussian(cls, omega_r: float, tau: float, t0: float = 0.0) -> "PulseEnvelope":
        return cls(PulseKind.GAUSSIAN, float(omega_r), float(tau), float(t0))

    @classmethod
    def box(cls, omega: float, tau: float) -> "PulseEnvelope":
        return cls(PulseKind.BOX, float(omega), float(tau), 0.0)

    def value(self, t: TimeLike) -> TimeLike:
        if self.kind is PulseKind.GAUSSIAN:
            exponent = -((t - self.t0) ** 2) / (2.0 * self.tau ** 2)
            if isinstance(t, np.ndarray):
                return self.amplitude * np.exp(exponent)
            return self.amplitude * math.exp(exponent)
        if isinstance(t, np.ndarray):
            return np.where((t >= 0.0) & (t < self.tau), self.amplitude, 0.0)
        return self.amplitude if 0.0 <= t < self.tau else 0.0

    def default_window(self) -> Tuple[float, float]:
        return default_window(self)

    def with_changes(self, **changes) -> "PulseEnvelope":
        fields = {"kind": self.kind, "amplitude": self.amplitude, "tau": self.tau, "t0": self.t0}
        fields.update(changes)
        if fields["kind"] is PulseKind.BOX:
            fields["t0"] = 0.0
        return PulseEnvelope(**fields)


def envelope_value(pulse: PulseEnvelope, t: TimeLike) -> TimeLike:
    """Ω(t) for the given envelope"""
    return pulse.value(t)


def default_window(pulse: PulseEnvelope) -> Tuple[float, float]:
    """
    Evolution window covering the pulse support.

    Box pulses run over [0, τ]. Gaussians peaked at t0 > 0 run over [0, 2 t0]
    (the optimized-pulse convention); otherwise t0 ± 5τ.
    """
    if pulse.kind is PulseKind.BOX:
        return 0.0, pulse.tau
    if pulse.t0 > 0.0:
        return 0.0, 2.0 * pulse.t0
    half = GAUSSIAN_WINDOW_WIDTHS * pulse.tau
    return pulse.t0 - half, pulse.t0 + half


def window_covers_pulse(pulse: PulseEnvelope, window: Tuple[float, float], threshold: float = 1e-3) -> bool:
    """True when the envelope at both window edges is below ``threshold`` of its peak"""
    start, end = window
    if pulse.kind is PulseKind.BOX:
        return start <= 0.0 and end >= pulse.tau
    edge = max(pulse.value(start), pulse.value(end))
    return pulse.amplitude == 0.0 or edge <= threshold * pulse.amplitude


def closed_support_value(pulse: PulseEnvelope, t: float) -> float:
    """Ω(t) with the box support closed at τ, for integrators whose last stage sits on the window edge"""
    if pulse.kind is PulseKind.BOX and t == pulse.tau:
        return pulse.amplitude
    return pulse.value(t)
