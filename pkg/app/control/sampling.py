"""
Error samples (polarization error, family momentum) with probability weights.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np
from numpy.polynomial.hermite import hermgauss

from app.errors import InvalidParameterError

logger = logging.getLogger(__name__)

# Uniform axes with at most this many samples use stratified midpoints
STRATIFIED_LIMIT = 16


class DistributionKind(str, Enum):
    FIXED = "fixed"
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class AxisDistribution:
    """Distribution of one error axis"""
    kind: DistributionKind = DistributionKind.FIXED
    value: float = 0.0
    low: float = 0.0
    high: float = 0.0
    mean: float = 0.0
    sigma: float = 0.0
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise InvalidParameterError("sample count must be at least 1", {"count": self.count})
        for name in ("value", "low", "high", "mean", "sigma"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"distribution parameter {name} must be finite")
        if self.kind is DistributionKind.UNIFORM and self.high < self.low:
            raise InvalidParameterError("uniform bounds are reversed", {"low": self.low, "high": self.high})
        if self.kind is DistributionKind.GAUSSIAN and self.sigma <= 0:
            raise InvalidParameterError("gaussian width must be positive", {"sigma": self.sigma})

    @classmethod
    def fixed(cls, value: float) -> "AxisDistribution":
        return cls(DistributionKind.FIXED, value=value)

    @classmethod
    def uniform(cls, low: float, high: float, count: int) -> "AxisDistribution":
        return cls(DistributionKind.UNIFORM, low=low, high=high, count=count)

    @classmethod
    def gaussian(cls, mean: float, sigma: float, count: int = 8) -> "AxisDistribution":
        return cls(DistributionKind.GAUSSIAN, mean=mean, sigma=sigma, count=count)

    def nodes(self, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
        """Sample positions and weights (weights sum to 1)"""
        if self.kind is DistributionKind.FIXED:
            return np.array([self.value]), np.array([1.0])
        if self.kind is DistributionKind.UNIFORM:
            if self.count <= STRATIFIED_LIMIT:
                width = (self.high - self.low) / self.count
                points = self.low + width * (np.arange(self.count) + 0.5)
            else:
                points = rng.uniform(self.low, self.high, self.count)
            return points, np.full(self.count, 1.0 / self.count)
        abscissae, weights = hermgauss(self.count)
        return self.mean + math.sqrt(2.0) * self.sigma * abscissae, weights / weights.sum()


@dataclass(frozen=True)
class SamplingSpec:
    epsilon: AxisDistribution = AxisDistribution()
    momentum: AxisDistribution = AxisDistribution()
    seed: int = 0


@dataclass(frozen=True)
class ErrorSample:
    epsilon: float
    momentum: float
    weight: float


def sample_errors(spec: SamplingSpec) -> List[ErrorSample]:
    """
    Tensor-product samples of both axes, deterministic for a given seed.

    Each axis draws from its own child stream of the seed.
    """
    epsilon_stream, momentum_stream = np.random.SeedSequence(spec.seed).spawn(2)
    epsilons, epsilon_weights = spec.epsilon.nodes(np.random.default_rng(epsilon_stream))
    momenta, momentum_weights = spec.momentum.nodes(np.random.default_rng(momentum_stream))
    samples = [
        ErrorSample(float(eps), float(p), float(we * wp))
        for eps, we in zip(epsilons, epsilon_weights)
        for p, wp in zip(momenta, momentum_weights)
    ]
    logger.debug(f"Sampled {len(samples)} error samples (seed {spec.seed})")
    return samples


def sample_arrays(samples: List[ErrorSample]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(epsilons, momenta, weights) arrays of a sample list"""
    return (np.array([s.epsilon for s in samples]),
            np.array([s.momentum for s in samples]),
            np.array([s.weight for s in samples]))
