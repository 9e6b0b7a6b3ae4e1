"""
First two Magnus terms by quadrature, and the AC-Stark rates they imply.

For U(T) = exp(G1 + G2 + ...):
    G1 = -i ∫ H(t1) dt1
    G2 = -1/2 ∫ [H(t1), ∫_0^{t1} H(t2) dt2] dt1
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from app.config import get_settings
from app.errors import InvalidParameterError, QuadratureResolutionTooCoarseError
from app.multilevel.basis import symmetric_index
from app.multilevel.hamiltonians import interaction_matrices

logger = logging.getLogger(__name__)

# Symmetric sector |0⟩, |1⟩ = |1,+⟩, |2⟩ = |2,+⟩ of the five-level basis at p = 0
SYMMETRIC_SECTOR = (0, symmetric_index(1), symmetric_index(2))

# Common period of every coupling frequency (multiples of 4) in the symmetric sector
SECTOR_PERIOD = math.pi / 2.0


@dataclass(frozen=True)
class MagnusTerms:
    g1: np.ndarray
    g2: np.ndarray
    duration: float

    @property
    def effective_hamiltonian(self) -> np.ndarray:
        """Average Hamiltonian i(G1 + G2)/T"""
        return 1j * (self.g1 + self.g2) / self.duration


def _running_integral(values: np.ndarray, times: np.ndarray) -> np.ndarray:
    # cumulative_simpson drops imaginary parts on some scipy releases
    real = cumulative_simpson(values.real, x=times, axis=0, initial=0)
    imag = cumulative_simpson(values.imag, x=times, axis=0, initial=0)
    return real + 1j * imag


def _check_samples(times: np.ndarray, hamiltonians: np.ndarray, max_step: Optional[float]) -> None:
    if times.ndim != 1 or times.size < 3 or hamiltonians.shape[0] != times.size:
        raise InvalidParameterError("magnus quadrature needs at least three samples matching H(t)",
                                    {"samples": int(times.size)})
    limit = get_settings().magnus_step if max_step is None else max_step
    step = float(np.max(np.diff(times)))
    if step > limit * (1.0 + 1e-9):
        raise QuadratureResolutionTooCoarseError("sample spacing exceeds the quadrature resolution",
                                                 {"step": step, "max_step": limit})


def second_order_series(times: np.ndarray, hamiltonians: np.ndarray,
                        max_step: Optional[float] = None) -> np.ndarray:
    """G2(T) for every sample time T, shape (N, d, d)"""
    times = np.asarray(times, dtype=float)
    hamiltonians = np.asarray(hamiltonians, dtype=complex)
    _check_samples(times, hamiltonians, max_step)
    running = _running_integral(hamiltonians, times)
    commutators = hamiltonians @ running - running @ hamiltonians
    return -0.5 * _running_integral(commutators, times)


def magnus_terms(times: np.ndarray, hamiltonians: np.ndarray,
                 max_step: Optional[float] = None) -> MagnusTerms:
    """
    Magnus terms over the sampled interval.

    Args:
        times: Uniform or non-uniform sample times, shape (N,)
        hamiltonians: H(t) at those times, shape (N, d, d)
        max_step: Largest allowed sample spacing (settings default 1e-3)

    Returns:
        MagnusTerms with G1 and G2 at the last sample time
    """
    times = np.asarray(times, dtype=float)
    hamiltonians = np.asarray(hamiltonians, dtype=complex)
    _check_samples(times, hamiltonians, max_step)

    g1 = -1j * simpson(hamiltonians, x=times, axis=0)
    running = _running_integral(hamiltonians, times)
    commutators = hamiltonians @ running - running @ hamiltonians
    g2 = -0.5 * simpson(commutators, x=times, axis=0)
    return MagnusTerms(g1=g1, g2=g2, duration=float(times[-1] - times[0]))


def ac_stark_rate(omega: float, epsilon: float = 0.0, duration: float = 16.0 * math.pi,
                  step: Optional[float] = None) -> np.ndarray:
    """
    Diagonal energy shifts of the symmetric three-level sector at p = 0 and Δ = 0.

    The full sector Hamiltonian is integrated from t = 0, resonant |0⟩-|1⟩ coupling
    included. The rate is the secular slope of i·G2 along its diagonal: i·G2(T)
    is averaged over one coupling period at the start and at the end of the
    window, which removes the bounded and boundary-oscillating parts exactly.

    Args:
        omega: Constant Rabi frequency
        epsilon: Polarization error
        duration: Window length, rounded to whole coupling periods (at least two)
        step: Largest sample spacing (settings default)

    Returns:
        Real rates (|0⟩, |1⟩, |2⟩) in ω_rec; Ω²(ε/4 - ε²/2) and
        Ω²(-3/64 - ε/4 + 5ε²/12) for the first two.
    """
    step = get_settings().magnus_step if step is None else step
    periods = max(2, int(round(duration / SECTOR_PERIOD)))
    per_period = int(math.ceil(SECTOR_PERIOD / step))
    count = periods * per_period + 1
    times = np.linspace(0.0, periods * SECTOR_PERIOD, count)
    coupling = np.cos(4.0 * times) + epsilon

    stack = np.empty((count, 3, 3), dtype=complex)
    for k, t in enumerate(times):
        full = interaction_matrices(2, np.zeros(1), omega, np.array([coupling[k]]), float(t))[0]
        stack[k] = full[np.ix_(SYMMETRIC_SECTOR, SYMMETRIC_SECTOR)]

    series = second_order_series(times, stack, max_step=step)
    diagonal = np.real(1j * np.diagonal(series, axis1=1, axis2=2))
    head = slice(0, per_period + 1)
    tail = slice(count - per_period - 1, count)
    early = simpson(diagonal[head], x=times[head], axis=0) / SECTOR_PERIOD
    late = simpson(diagonal[tail], x=times[tail], axis=0) / SECTOR_PERIOD
    rates = (late - early) / (times[-1] - SECTOR_PERIOD)
    logger.debug(f"AC-Stark rates at Ω={omega}, ε={epsilon}: {rates}")
    return rates
