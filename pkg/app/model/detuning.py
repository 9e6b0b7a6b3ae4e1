"""
Detuning profiles Δ(t), polarization errors and the lattice coupling factor.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from app.errors import InvalidParameterError
from app.model.units import QUASI_BRAGG_DETUNING_LIMIT

logger = logging.getLogger(__name__)

TimeLike = Union[float, np.ndarray]

DEFAULT_DETUNING_BOUND = 4.0


class DetuningKind(str, Enum):
    CONSTANT = "constant"
    LINEAR = "linear"
    PIECEWISE = "piecewise"


def _check_sweep_width(tau: float) -> None:
    if not (math.isfinite(tau) and tau > 0.0):
        raise InvalidParameterError("sweep pulse width must be positive", {"tau": tau})


@dataclass(frozen=True)
class DetuningProfile:
    """
    Detuning of the moving lattice, clamped to ±bound.

    constant: Δ(t) = value
    linear: Δ(t) = slope · (t - t_ref)
    piecewise: linear interpolation through (time, value) knots, held flat outside
    """
    kind: DetuningKind
    value: float = 0.0
    slope: float = 0.0
    t_ref: float = 0.0
    knot_times: Tuple[float, ...] = field(default_factory=tuple)
    knot_values: Tuple[float, ...] = field(default_factory=tuple)
    bound: float = DEFAULT_DETUNING_BOUND

    def __post_init__(self):
        if not (self.bound > 0):
            raise InvalidParameterError("detuning bound must be positive", {"bound": self.bound})
        if self.kind is DetuningKind.PIECEWISE:
            if len(self.knot_times) == 0 or len(self.knot_times) != len(self.knot_values):
                raise InvalidParameterError("piecewise detuning needs matching, non-empty knot lists",
                                            {"times": len(self.knot_times), "values": len(self.knot_values)})
            if any(b <= a for a, b in zip(self.knot_times, self.knot_times[1:])):
                raise InvalidParameterError("knot times must be strictly increasing")
        if self.kind is DetuningKind.CONSTANT and abs(self.value) > self.bound:
            logger.warning(f"Constant detuning {self.value} is clamped to ±{self.bound}")
        if min(self.bound, self._largest_raw()) > QUASI_BRAGG_DETUNING_LIMIT:
            logger.warning(f"Detuning may exceed {QUASI_BRAGG_DETUNING_LIMIT}; quasi-Bragg regime")

    def _largest_raw(self) -> float:
        if self.kind is DetuningKind.CONSTANT:
            return abs(self.value)
        if self.kind is DetuningKind.PIECEWISE:
            return max(abs(v) for v in self.knot_values)
        return math.inf

    @classmethod
    def constant(cls, delta: float, bound: float = DEFAULT_DETUNING_BOUND) -> "DetuningProfile":
        return cls(DetuningKind.CONSTANT, value=float(delta), bound=bound)

    @classmethod
    def linear(cls, slope: float, t_ref: float, bound: float = DEFAULT_DETUNING_BOUND) -> "DetuningProfile":
        return cls(DetuningKind.LINEAR, slope=float(slope), t_ref=float(t_ref), bound=bound)

    @classmethod
    def sweep_polarization(cls, tau: float, t0: float = 0.0,
                           bound: float = DEFAULT_DETUNING_BOUND) -> "DetuningProfile":
        """Δ(t) = (t - t0 + τ) / (2.5 τ)"""
        _check_sweep_width(tau)
        return cls.linear(slope=1.0 / (2.5 * tau), t_ref=t0 - tau, bound=bound)

    @classmethod
    def sweep_doppler(cls, tau: float, bound: float = DEFAULT_DETUNING_BOUND) -> "DetuningProfile":
        """Δ(t) = (t + 0.9 τ) / (5 τ)"""
        _check_sweep_width(tau)
        return cls.linear(slope=1.0 / (5.0 * tau), t_ref=-0.9 * tau, bound=bound)

    @classmethod
    def piecewise(cls, times: Sequence[float], values: Sequence[float],
                  bound: float = DEFAULT_DETUNING_BOUND) -> "DetuningProfile":
        return cls(DetuningKind.PIECEWISE, knot_times=tuple(float(t) for t in times),
                   knot_values=tuple(float(v) for v in values), bound=bound)

    @property
    def is_time_dependent(self) -> bool:
        if self.kind is DetuningKind.CONSTANT:
            return False
        if self.kind is DetuningKind.LINEAR:
            return self.slope != 0.0
        return len(set(self.knot_values)) > 1

    @property
    def knots(self) -> Tuple[Tuple[float, float], ...]:
        return tuple(zip(self.knot_times, self.knot_values))

    def value_at(self, t: TimeLike) -> TimeLike:
        if self.kind is DetuningKind.CONSTANT:
            raw = np.full_like(t, self.value, dtype=float) if isinstance(t, np.ndarray) else self.value
        elif self.kind is DetuningKind.LINEAR:
            raw = self.slope * (t - self.t_ref)
        else:
            raw = np.interp(t, self.knot_times, self.knot_values)
            if not isinstance(t, np.ndarray):
                raw = float(raw)
        if isinstance(raw, np.ndarray):
            return np.clip(raw, -self.bound, self.bound)
        return min(max(raw, -self.bound), self.bound)


@dataclass(frozen=True)
class PolarizationError:
    """Relative amplitude of the parasitic retro-reflected polarization, 0 ≤ ε ≤ 1"""
    epsilon: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.epsilon <= 1.0):
            raise InvalidParameterError("polarization error must lie in [0, 1]", {"epsilon": self.epsilon})


def detuning_value(profile: DetuningProfile, t: TimeLike) -> TimeLike:
    """Δ(t), clamped to the profile bound"""
    return profile.value_at(t)


def _epsilon_of(epsilon: Union[PolarizationError, float, np.ndarray]) -> Union[float, np.ndarray]:
    if isinstance(epsilon, PolarizationError):
        return epsilon.epsilon
    return epsilon


def coupling_factor(t: float, epsilon: Union[PolarizationError, float, np.ndarray],
                    profile: DetuningProfile) -> Union[float, np.ndarray]:
    """
    Lattice coupling C(t) = cos((4 + Δ(t)) t) + ε.

    ``epsilon`` may be an array of samples; the result then has the same shape.
    """
    return math.cos((4.0 + profile.value_at(t)) * t) + _epsilon_of(epsilon)
