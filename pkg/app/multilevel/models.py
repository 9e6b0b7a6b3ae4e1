"""
Multilevel model tiers (five-level and general N-level).
"""

import math

import numpy as np

from app.errors import BasisTooSmallError, InvalidParameterError
from app.model.hamiltonian import FewLevelModel

from .basis import bare_amplitudes
from .hamiltonians import interaction_matrices, lab_matrices


class _MultilevelModel(FewLevelModel):

    def __init__(self, n_max: int = 2):
        if n_max < 1:
            raise BasisTooSmallError("multilevel model needs at least one shell", {"n_max": n_max})
        self.n_max = n_max

    @property
    def dimension(self) -> int:
        return 2 * self.n_max + 1

    def bare_populations(self, amplitudes: np.ndarray) -> np.ndarray:
        return np.abs(bare_amplitudes(amplitudes, self.n_max)) ** 2

    def check_momenta(self, momenta: np.ndarray) -> None:
        if np.any(momenta < -1.0) or np.any(momenta >= 1.0):
            raise InvalidParameterError("family momenta must lie in [-1, 1)",
                                        {"min": float(np.min(momenta)), "max": float(np.max(momenta))})

    @staticmethod
    def _coupling(t: float, delta: float, epsilons: np.ndarray) -> np.ndarray:
        return math.cos((4.0 + delta) * t) + epsilons

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n_max={self.n_max})"


class InteractionPictureModel(_MultilevelModel):
    """Default multilevel tier: no diagonal, so the integrator only tracks the slow dynamics"""

    name = "interaction"

    def matrices(self, t, omega, delta, epsilons, momenta):
        return interaction_matrices(self.n_max, momenta, omega, self._coupling(t, delta, epsilons), t)


class LabFrameModel(_MultilevelModel):

    name = "lab"

    def matrices(self, t, omega, delta, epsilons, momenta):
        return lab_matrices(self.n_max, momenta, omega, self._coupling(t, delta, epsilons))
