"""
Effective two-level and RWA model tiers.
"""

import numpy as np

from app.errors import IncompatibleTierError
from app.model.detuning import DetuningProfile
from app.model.hamiltonian import FewLevelModel

from .tls import SQRT2_HALF, differential_light_shift, tls_matrices


class _TwoLevelModel(FewLevelModel):
    n_max = 1

    @property
    def dimension(self) -> int:
        return 2

    def bare_populations(self, amplitudes: np.ndarray) -> np.ndarray:
        probabilities = np.abs(amplitudes) ** 2
        half_excited = probabilities[:, 1] / 2.0
        return np.stack([half_excited, probabilities[:, 0], half_excited], axis=1)

    def check_detuning(self, detuning: DetuningProfile) -> None:
        if detuning.is_time_dependent:
            raise IncompatibleTierError(
                f"{self.name} tier only supports constant detuning; use the five-level tier",
                {"tier": self.name, "detuning": detuning.kind.value},
            )

    def check_momenta(self, momenta: np.ndarray) -> None:
        if np.any(np.abs(momenta) > 1e-12):
            raise IncompatibleTierError(
                f"{self.name} tier describes p = 0 only; use a multilevel tier for Doppler shifts",
                {"tier": self.name, "max_momentum": float(np.max(np.abs(momenta)))},
            )


class EffectiveTlsModel(_TwoLevelModel):
    """Propagates the effective Hamiltonian with Ω(t), constant Δ and ε"""

    name = "tls"

    def matrices(self, t, omega, delta, epsilons, momenta):
        return tls_matrices(omega, delta, epsilons, t)


class RwaModel(_TwoLevelModel):
    """Propagates the RWA Hamiltonian with δ_diff(t) = -Δ - 3Ω(t)²/64"""

    name = "rwa"

    def matrices(self, t, omega, delta, epsilons, momenta):
        h = np.zeros((len(epsilons), 2, 2), dtype=complex)
        h[:, 0, 1] = h[:, 1, 0] = SQRT2_HALF * omega
        h[:, 1, 1] = differential_light_shift(omega, delta)
        return h
