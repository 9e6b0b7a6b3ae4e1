"""
Beam-splitter cost and the two efficiency metrics.

DBD efficiency: population transferred into the target pair of ports.
OCT BS efficiency: 1 - cost, with the per-sample cost
    |0.5 - P₊| + |0.5 - P₋| + |P₊ - P₋|.
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from app.errors import InvalidPopulationError

# Integrator round-off allowed on populations
POPULATION_SLACK = 1e-8

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class PortPopulations:
    """Populations of |p + 2⟩ and |p - 2⟩ for one sample"""
    plus: float
    minus: float
    weight: float = 1.0


def _check(plus: np.ndarray, minus: np.ndarray) -> None:
    if np.any(~np.isfinite(plus)) or np.any(~np.isfinite(minus)):
        raise InvalidPopulationError("port populations must be finite")
    low = min(np.min(plus), np.min(minus))
    high = max(np.max(plus), np.max(minus), np.max(plus + minus))
    if low < -POPULATION_SLACK or high > 1.0 + POPULATION_SLACK:
        raise InvalidPopulationError("port populations out of range",
                                     {"min": float(low), "max": float(high)})


def sample_cost(plus: ArrayLike, minus: ArrayLike) -> ArrayLike:
    """Per-sample cost, vectorized"""
    plus = np.asarray(plus, dtype=float)
    minus = np.asarray(minus, dtype=float)
    _check(plus, minus)
    cost = np.abs(0.5 - plus) + np.abs(0.5 - minus) + np.abs(plus - minus)
    return float(cost) if cost.ndim == 0 else cost


def weighted_cost(plus: np.ndarray, minus: np.ndarray, weights: np.ndarray) -> float:
    weights = np.asarray(weights, dtype=float)
    return float(np.sum(weights * sample_cost(plus, minus)) / np.sum(weights))


def bs_cost(populations: Sequence[PortPopulations]) -> float:
    """Weighted average of the per-sample cost"""
    if not populations:
        raise InvalidPopulationError("no samples to evaluate")
    plus = np.array([p.plus for p in populations])
    minus = np.array([p.minus for p in populations])
    weights = np.array([p.weight for p in populations])
    return weighted_cost(plus, minus, weights)


def oct_bs_efficiency(populations: Sequence[PortPopulations]) -> float:
    return 1.0 - bs_cost(populations)


def dbd_efficiency(plus: ArrayLike, minus: ArrayLike) -> ArrayLike:
    """Population in the first-order pair |p ± 2⟩"""
    return plus + minus
