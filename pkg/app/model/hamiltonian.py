"""
Common interface of the few-level model tiers.

A model builds a stack of Hamiltonian matrices, one per (ε, p) sample, at a
given time. Propagators only talk to this interface.
"""

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from app.model.detuning import DetuningProfile


class FewLevelModel(ABC):
    """Batched few-level Hamiltonian H(t) over error samples"""

    name = "few_level"
    #: bare diffraction orders covered by ``bare_populations``
    n_max = 1

    @property
    @abstractmethod
    def dimension(self) -> int:
        ...

    @abstractmethod
    def matrices(self, t: float, omega: float, delta: float,
                 epsilons: np.ndarray, momenta: np.ndarray) -> np.ndarray:
        """
        Hamiltonians at time t.

        Args:
            t: Time
            omega: Envelope value Ω(t)
            delta: Detuning value Δ(t)
            epsilons: Polarization errors, shape (S,)
            momenta: Initial momenta, shape (S,)

        Returns:
            Complex array of shape (S, d, d)
        """

    @abstractmethod
    def bare_populations(self, amplitudes: np.ndarray) -> np.ndarray:
        """Map amplitudes (S, d) to bare-order populations (S, 2 n_max + 1), orders -n_max..n_max"""

    def initial_amplitudes(self, samples: int) -> np.ndarray:
        """Every sample starts in the first basis state"""
        state = np.zeros((samples, self.dimension), dtype=complex)
        state[:, 0] = 1.0
        return state

    def check_detuning(self, detuning: DetuningProfile) -> None:
        """Raise when the model cannot represent the given detuning"""

    def check_momenta(self, momenta: np.ndarray) -> None:
        """Raise when the model cannot represent the given momenta"""

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(range(-self.n_max, self.n_max + 1))
