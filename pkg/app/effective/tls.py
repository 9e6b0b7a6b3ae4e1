"""
Effective two-level description of double Bragg diffraction.

States: |0⟩ = |p = 0⟩ and |1⟩ = (|+2⟩ + |-2⟩)/√2. The effective Hamiltonian keeps
the counter-rotating and polarization-error couplings as well as the
second-order light shifts; the RWA drops everything but the resonant term.
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

# AC-Stark coefficient of the first-order state (in units of Ω²)
LIGHT_SHIFT_COEFFICIENT = 3.0 / 64.0
SQRT2_HALF = math.sqrt(2.0) / 2.0


@dataclass(frozen=True)
class TlsHamiltonian:
    """2x2 effective Hamiltonian at one instant"""
    matrix: np.ndarray
    labels: Tuple[str, str] = ("|0>", "|1>")


@dataclass(frozen=True)
class RwaHamiltonian:
    """Time-independent RWA Hamiltonian [[0, √2Ω/2], [√2Ω/2, δ_diff]]"""
    omega: float
    delta_diff: float

    @property
    def matrix(self) -> np.ndarray:
        coupling = SQRT2_HALF * self.omega
        return np.array([[0.0, coupling], [coupling, self.delta_diff]], dtype=complex)

    @classmethod
    def from_detuning(cls, omega: float, delta: float) -> "RwaHamiltonian":
        return cls(omega=omega, delta_diff=differential_light_shift(omega, delta))


def tls_matrices(omega: float, delta: float, epsilon: ArrayLike, t: float) -> np.ndarray:
    """
    Effective Hamiltonians for a batch of polarization errors.

    Returns an array of shape (S, 2, 2) for S = len(epsilon) (S = 1 for a scalar).
    """
    eps = np.atleast_1d(np.asarray(epsilon, dtype=float))
    omega_sq = omega * omega
    h = np.zeros((eps.size, 2, 2), dtype=complex)
    h[:, 0, 0] = omega_sq * (eps / 4.0 - eps ** 2 / 2.0)
    h[:, 1, 1] = omega_sq * (-LIGHT_SHIFT_COEFFICIENT - eps / 4.0 + 5.0 * eps ** 2 / 12.0)
    off = SQRT2_HALF * omega * (np.exp(1j * delta * t) + np.exp(-1j * (delta + 8.0) * t)
                                + 2.0 * eps * np.exp(-4j * t))
    h[:, 0, 1] = off
    h[:, 1, 0] = np.conj(off)
    return h


def build_tls_hamiltonian(omega: float, delta: float, epsilon: float, t: float) -> TlsHamiltonian:
    """Effective Hamiltonian for Ω, constant Δ and ε at time t"""
    return TlsHamiltonian(matrix=tls_matrices(omega, delta, epsilon, t)[0])


def differential_light_shift(omega: ArrayLike, delta: ArrayLike) -> ArrayLike:
    """δ_diff = -Δ - 3Ω²/64"""
    return -delta - LIGHT_SHIFT_COEFFICIENT * omega * omega


def rabi_population(omega: ArrayLike, delta_diff: ArrayLike, t: ArrayLike) -> ArrayLike:
    """Excited population of the RWA Hamiltonian: 2Ω²/(2Ω²+δ²) sin²(√(2Ω²+δ²) t / 2)"""
    generalized_sq = 2.0 * np.square(omega) + np.square(delta_diff)
    if np.any(generalized_sq == 0):
        generalized_sq = np.where(generalized_sq == 0, 1.0, generalized_sq)
        amplitude = np.where(np.asarray(omega) == 0, 0.0, 2.0 * np.square(omega) / generalized_sq)
    else:
        amplitude = 2.0 * np.square(omega) / generalized_sq
    result = amplitude * np.sin(np.sqrt(generalized_sq) * np.asarray(t) / 2.0) ** 2
    return float(result) if np.ndim(result) == 0 else result


def gaussian_pulse_area_population(omega_r: ArrayLike, tau: ArrayLike) -> ArrayLike:
    """Resonant Gaussian pulse-area result sin²(√π Ω_R τ)"""
    result = np.sin(math.sqrt(math.pi) * np.asarray(omega_r) * np.asarray(tau)) ** 2
    return float(result) if np.ndim(result) == 0 else result


def pi_pulse_duration(omega_r: float) -> float:
    """Gaussian τ with full transfer under the pulse-area condition"""
    return math.sqrt(math.pi) / (2.0 * omega_r)
