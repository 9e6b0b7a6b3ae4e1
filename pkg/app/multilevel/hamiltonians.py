"""
Lab-frame and interaction-picture Hamiltonians of the truncated Bragg family.

Lab frame (basis order of ``MomentumBasis``):
    ⟨p|H|p⟩ = p², ⟨n,±|H|n,±⟩ = p² + 4n², ⟨n,+|H|n,-⟩ = 4np,
    ⟨p|H|1,+⟩ = √2 C Ω, ⟨n,±|H|n+1,±⟩ = C Ω.
The interaction picture removes the diagonal and dresses the shell couplings
with e^{-i4t} (|p⟩-|1,+⟩) and e^{-i4(2n+1)t} (shell n to n+1).
"""

import math
from typing import Union

import numpy as np

from app.errors import InvalidParameterError
from app.model.detuning import DetuningProfile, PolarizationError, coupling_factor

from .basis import MomentumBasis, antisymmetric_index, symmetric_index

SQRT2 = math.sqrt(2.0)
ArrayLike = Union[float, np.ndarray]
SIDES = {"left": -1, "right": 1}


def _stack(n_max: int, size: int) -> np.ndarray:
    return np.zeros((size, 2 * n_max + 1, 2 * n_max + 1), dtype=complex)


def _fill_couplings(h: np.ndarray, n_max: int, drive: np.ndarray, t: float, rotating: bool) -> None:
    first = SQRT2 * drive
    if rotating:
        first = first * np.exp(-4j * t)
    h[:, 0, 1] = first
    h[:, 1, 0] = np.conj(first)
    for n in range(1, n_max):
        shell = drive * np.exp(-4j * (2 * n + 1) * t) if rotating else drive
        for index in (symmetric_index, antisymmetric_index):
            a, b = index(n), index(n + 1)
            h[:, a, b] = shell
            h[:, b, a] = np.conj(shell)


def _fill_doppler(h: np.ndarray, n_max: int, momenta: np.ndarray) -> None:
    for n in range(1, n_max + 1):
        a, b = symmetric_index(n), antisymmetric_index(n)
        h[:, a, b] = h[:, b, a] = 4.0 * n * momenta


def lab_matrices(n_max: int, momenta: np.ndarray, omega: float, coupling: np.ndarray) -> np.ndarray:
    """Lab-frame Hamiltonians (S, d, d) for momenta and coupling factors C of shape (S,)"""
    momenta = np.atleast_1d(np.asarray(momenta, dtype=float))
    drive = omega * np.broadcast_to(np.atleast_1d(coupling), momenta.shape).astype(complex)
    h = _stack(n_max, momenta.size)
    kinetic = momenta ** 2
    h[:, 0, 0] = kinetic
    for n in range(1, n_max + 1):
        h[:, symmetric_index(n), symmetric_index(n)] = kinetic + 4.0 * n * n
        h[:, antisymmetric_index(n), antisymmetric_index(n)] = kinetic + 4.0 * n * n
    _fill_doppler(h, n_max, momenta)
    _fill_couplings(h, n_max, drive, 0.0, rotating=False)
    return h


def interaction_matrices(n_max: int, momenta: np.ndarray, omega: float, coupling: np.ndarray,
                         t: float) -> np.ndarray:
    """Interaction-picture Hamiltonians (S, d, d) with respect to the diagonal of the lab frame"""
    momenta = np.atleast_1d(np.asarray(momenta, dtype=float))
    drive = omega * np.broadcast_to(np.atleast_1d(coupling), momenta.shape).astype(complex)
    h = _stack(n_max, momenta.size)
    _fill_doppler(h, n_max, momenta)
    _fill_couplings(h, n_max, drive, t, rotating=True)
    return h


def build_lab_hamiltonian(basis: MomentumBasis, omega: float, epsilon: Union[PolarizationError, float],
                          detuning: DetuningProfile, t: float) -> np.ndarray:
    """Lab-frame Hamiltonian of one Bragg family at time t"""
    c = coupling_factor(t, epsilon, detuning)
    return lab_matrices(basis.n_max, np.array([basis.momentum]), omega, np.array([c]))[0]


def build_interaction_hamiltonian(basis: MomentumBasis, omega: float, epsilon: Union[PolarizationError, float],
                                  detuning: DetuningProfile, t: float) -> np.ndarray:
    """Interaction-picture Hamiltonian of one Bragg family at time t"""
    c = coupling_factor(t, epsilon, detuning)
    return interaction_matrices(basis.n_max, np.array([basis.momentum]), omega, np.array([c]), t)[0]


def doppler_shift(p: ArrayLike, n: int) -> ArrayLike:
    """Coupling 4np between |n,+⟩ and |n,-⟩"""
    return 4.0 * n * p


def asymmetry_energy_defect(p0: ArrayLike, side: Union[int, str]) -> ArrayLike:
    """Energy defect of the p0 -> p0 - 2 (left, -1) or p0 -> p0 + 2 (right, +1) transition: -4p0 left, +4p0 right"""
    sign = SIDES.get(side) if isinstance(side, str) else side
    if sign not in (1, -1):
        raise InvalidParameterError("side must be left, right, -1 or +1", {"side": side})
    return 4.0 * sign * p0
