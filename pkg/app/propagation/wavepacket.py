"""
Momentum-space wavepackets, their Brillouin-zone populations and their
reconstruction from few-level evolutions of individual momentum families.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from app.errors import InconsistentBasisError, InvalidParameterError, NormDriftError

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-8
# Offset-from-grid tolerance (in units of the spacing) when shifting by 2ħk_L
ALIGNMENT_TOLERANCE = 1e-6


@dataclass
class MomentumWavepacket:
    """
    Wavefunction ψ(p) on a uniform, ascending momentum grid.

    Normalized so that Σ|ψ|² dp = 1.
    """
    grid: np.ndarray
    amplitudes: np.ndarray
    spacing: float
    p0: float = 0.0
    sigma_p: Optional[float] = None

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.grid.shape != self.amplitudes.shape:
            raise InvalidParameterError("grid and amplitudes differ in shape",
                                        {"grid": self.grid.shape, "amplitudes": self.amplitudes.shape})
        if self.spacing <= 0:
            raise InvalidParameterError("grid spacing must be positive", {"spacing": self.spacing})

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norm(self) -> float:
        return float(np.sum(self.density) * self.spacing)

    @property
    def mean_momentum(self) -> float:
        return float(np.sum(self.grid * self.density) * self.spacing / self.norm)

    def check_normalized(self, tolerance: float = NORM_TOLERANCE) -> None:
        drift = abs(self.norm - 1.0)
        if drift > tolerance:
            raise NormDriftError("wavepacket is not normalized", {"norm_drift": drift})


def gaussian_amplitudes(grid: np.ndarray, p0: float, sigma_p: float) -> np.ndarray:
    """(2πσ_p²)^{-1/4} exp(-(p - p0)² / (4σ_p²))"""
    return (2.0 * math.pi * sigma_p ** 2) ** -0.25 * np.exp(-((grid - p0) ** 2) / (4.0 * sigma_p ** 2))


def gaussian_wavepacket(p0: float, sigma_p: float, grid: np.ndarray, spacing: float) -> MomentumWavepacket:
    """Gaussian packet on the given grid, renormalized on that grid"""
    if sigma_p <= 0:
        raise InvalidParameterError("momentum width must be positive", {"sigma_p": sigma_p})
    amplitudes = gaussian_amplitudes(grid, p0, sigma_p).astype(complex)
    amplitudes /= math.sqrt(np.sum(np.abs(amplitudes) ** 2) * spacing)
    return MomentumWavepacket(grid=grid, amplitudes=amplitudes, spacing=spacing, p0=p0, sigma_p=sigma_p)


def zone_orders(momenta: np.ndarray) -> np.ndarray:
    """Zone n with p in (-1 + 2n, 1 + 2n]; points on an edge go to the lower zone"""
    return np.ceil((np.asarray(momenta) - 1.0) / 2.0 - 1e-9).astype(int)


def bin_populations(packet: MomentumWavepacket) -> Dict[int, float]:
    """Population of every Brillouin zone (diffraction order) covered by the grid"""
    orders = zone_orders(packet.grid)
    weights = packet.density * packet.spacing
    populations: Dict[int, float] = {}
    for order in range(int(orders.min()), int(orders.max()) + 1):
        populations[order] = float(np.sum(weights[orders == order]))
    return populations


def assemble_wavepacket(momenta: Sequence[float], bare_amplitudes: np.ndarray, weights: np.ndarray,
                        spacing: float, p0: float = 0.0, sigma_p: Optional[float] = None) -> MomentumWavepacket:
    """
    Superpose per-family evolutions into one momentum-space packet.

    Args:
        momenta: Family momenta p, uniform with the given spacing, all in [-1, 1)
        bare_amplitudes: Final bare amplitudes per family, shape (S, 2 n_max + 1), orders -n_max..n_max
        weights: Initial amplitudes ψ(p), normalized so that Σ|ψ|² spacing = 1
        spacing: Momentum spacing of the samples (2 / spacing must be an integer)
        p0: Centre momentum recorded on the packet
        sigma_p: Width recorded on the packet

    Returns:
        MomentumWavepacket with ψ_final(p + 2n) = ψ(p) · a_n(p)
    """
    momenta = np.asarray(momenta, dtype=float)
    bare_amplitudes = np.atleast_2d(np.asarray(bare_amplitudes, dtype=complex))
    weights = np.asarray(weights, dtype=complex)
    if bare_amplitudes.shape[0] != momenta.size or weights.shape != momenta.shape:
        raise InconsistentBasisError("per-momentum results and weights differ in length",
                                     {"momenta": momenta.size, "results": bare_amplitudes.shape[0],
                                      "weights": weights.size})
    if bare_amplitudes.shape[1] % 2 != 1:
        raise InconsistentBasisError("bare amplitudes must cover orders -n_max..n_max",
                                     {"columns": bare_amplitudes.shape[1]})
    if np.any(momenta < -1.0) or np.any(momenta >= 1.0):
        raise InconsistentBasisError("family momenta must lie in [-1, 1)")
    shift = 2.0 / spacing
    if abs(shift - round(shift)) > ALIGNMENT_TOLERANCE:
        raise InconsistentBasisError("order shifts of 2ħk_L do not land on the sample grid",
                                     {"spacing": spacing})
    offsets = (momenta - momenta.min()) / spacing
    if np.any(np.abs(offsets - np.round(offsets)) > ALIGNMENT_TOLERANCE):
        raise InconsistentBasisError("family momenta are not on a uniform grid", {"spacing": spacing})
    norm = float(np.sum(np.abs(weights) ** 2) * spacing)
    if abs(norm - 1.0) > 1e-6:
        raise InconsistentBasisError("weights are not normalized", {"norm": norm})

    n_max = bare_amplitudes.shape[1] // 2
    step = int(round(shift))
    base = np.round(offsets).astype(int)
    span = int(base.max()) + 1
    size = span + 2 * n_max * step
    grid_min = momenta.min() - 2.0 * n_max
    grid = grid_min + spacing * np.arange(size)
    amplitudes = np.zeros(size, dtype=complex)
    for column, order in enumerate(range(-n_max, n_max + 1)):
        index = base + (order + n_max) * step
        amplitudes[index] += weights * bare_amplitudes[:, column]
    return MomentumWavepacket(grid=grid, amplitudes=amplitudes, spacing=spacing, p0=p0, sigma_p=sigma_p)


def family_samples(p0: float, sigma_p: float, widths: float = 6.0, per_sigma: int = 8):
    """
    Momentum samples and weights for evolving a Gaussian packet family by family.

    Returns:
        (momenta, weights, spacing) with spacing ≤ σ_p/per_sigma and 2/spacing integral
    """
    spacing = 2.0 / math.ceil(2.0 * per_sigma / sigma_p)
    low = max(-1.0, p0 - widths * sigma_p)
    high = min(1.0 - spacing, p0 + widths * sigma_p)
    start = math.ceil(low / spacing - 1e-9)
    stop = math.floor(high / spacing + 1e-9)
    momenta = spacing * np.arange(start, stop + 1)
    weights = gaussian_amplitudes(momenta, p0, sigma_p).astype(complex)
    weights /= math.sqrt(np.sum(np.abs(weights) ** 2) * spacing)
    return momenta, weights, spacing
