"""
Symmetric/antisymmetric momentum basis of a Bragg family.

Basis order: |p⟩, |1,+⟩, |1,-⟩, |2,+⟩, |2,-⟩, ... with
|n,±⟩ = (|p + 2n⟩ ± |p - 2n⟩)/√2.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from app.errors import BasisTooSmallError, InvalidParameterError, NormDriftError

logger = logging.getLogger(__name__)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class Picture(str, Enum):
    LAB = "lab"
    INTERACTION = "interaction"


@dataclass(frozen=True)
class MomentumBasis:
    """Bragg family around p, truncated at shell n_max"""
    momentum: float = 0.0
    n_max: int = 2

    def __post_init__(self):
        if self.n_max < 1:
            raise BasisTooSmallError("momentum basis needs at least one shell", {"n_max": self.n_max})
        if not (-1.0 <= self.momentum < 1.0):
            raise InvalidParameterError("family momentum must lie in the first Brillouin zone [-1, 1)",
                                        {"momentum": self.momentum})

    @property
    def dimension(self) -> int:
        return 2 * self.n_max + 1

    @property
    def labels(self) -> List[str]:
        labels = ["|p>"]
        for n in range(1, self.n_max + 1):
            labels += [f"|{n},+>", f"|{n},->"]
        return labels

    @property
    def orders(self) -> List[int]:
        return list(range(-self.n_max, self.n_max + 1))

    @property
    def bare_momenta(self) -> np.ndarray:
        """Momenta p + 2n for orders -n_max..n_max"""
        return self.momentum + 2.0 * np.arange(-self.n_max, self.n_max + 1)


def symmetric_index(n: int) -> int:
    return 2 * n - 1


def antisymmetric_index(n: int) -> int:
    return 2 * n


def bare_amplitudes(amplitudes: np.ndarray, n_max: int) -> np.ndarray:
    """
    Map basis amplitudes (..., 2 n_max + 1) to bare amplitudes of orders -n_max..n_max.

    Order +n gets (a_{n,+} + a_{n,-})/√2, order -n gets (a_{n,+} - a_{n,-})/√2.
    """
    amplitudes = np.asarray(amplitudes)
    bare = np.empty_like(amplitudes, dtype=complex)
    bare[..., n_max] = amplitudes[..., 0]
    for n in range(1, n_max + 1):
        plus = amplitudes[..., symmetric_index(n)]
        minus = amplitudes[..., antisymmetric_index(n)]
        bare[..., n_max + n] = (plus + minus) * INV_SQRT2
        bare[..., n_max - n] = (plus - minus) * INV_SQRT2
    return bare


@dataclass
class FewLevelState:
    """Amplitudes over a momentum basis"""
    basis: MomentumBasis
    amplitudes: np.ndarray
    picture: Picture = Picture.INTERACTION
    time: Optional[float] = None
    norm_tolerance: float = field(default=1e-8, repr=False)

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.basis.dimension,):
            raise InvalidParameterError("amplitude vector does not match the basis",
                                        {"shape": self.amplitudes.shape, "dimension": self.basis.dimension})
        drift = abs(self.norm - 1.0)
        if drift > self.norm_tolerance:
            raise NormDriftError("few-level state is not normalized", {"norm_drift": drift})

    @classmethod
    def initial(cls, basis: MomentumBasis, picture: Picture = Picture.INTERACTION) -> "FewLevelState":
        amplitudes = np.zeros(basis.dimension, dtype=complex)
        amplitudes[0] = 1.0
        return cls(basis, amplitudes, picture, time=None)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def bare_populations(self) -> Dict[int, float]:
        """Populations of |p + 2n⟩ keyed by order n"""
        bare = np.abs(bare_amplitudes(self.amplitudes, self.basis.n_max)) ** 2
        return {order: float(value) for order, value in zip(self.basis.orders, bare)}
