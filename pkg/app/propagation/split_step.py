"""
Exact position-space solver for a single atom in the double Bragg lattice.

    H = p² + 2Ω(t) cos(2x) C(t),  C(t) = cos((4 + Δ(t)) t) + ε

Second-order (Strang) splitting: half kinetic step in momentum space, full
potential step in position space at the step midpoint, half kinetic step.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from app.config import get_settings
from app.errors import GridTooCoarseError, InconsistentBasisError, NormDriftError
from app.model.detuning import DetuningProfile, PolarizationError
from app.model.pulses import PulseEnvelope, default_window, window_covers_pulse

from .models import Diagnostics, EvolutionResult, Trajectory
from .wavepacket import NORM_TOLERANCE, MomentumWavepacket, bin_populations, gaussian_wavepacket, zone_orders

logger = logging.getLogger(__name__)

MOMENTUM_EXTENT = 10.9
MIN_POINTS = 2048
POINTS_PER_SIGMA = 8


@dataclass(frozen=True)
class SpatialGrid:
    """Periodic box of ``periods`` lattice periods (length periods·π) sampled at ``points``"""
    points: int
    periods: int

    def __post_init__(self):
        if self.points < 2 or self.points % 2 or self.periods < 1:
            raise InconsistentBasisError("grid needs an even point count and at least one period",
                                         {"points": self.points, "periods": self.periods})

    @classmethod
    def for_width(cls, sigma_p: float, extent: float = MOMENTUM_EXTENT,
                  min_points: int = MIN_POINTS) -> "SpatialGrid":
        """Smallest power-of-two grid reaching ±extent with spacing ≤ σ_p/8"""
        periods = math.ceil(2.0 * POINTS_PER_SIGMA / sigma_p - 1e-9)
        points = max(min_points, 1 << math.ceil(math.log2(extent * periods)))
        return cls(points=points, periods=periods)

    @property
    def length(self) -> float:
        return self.periods * math.pi

    @property
    def dx(self) -> float:
        return self.length / self.points

    @property
    def dp(self) -> float:
        return 2.0 / self.periods

    @property
    def p_max(self) -> float:
        return self.points / self.periods

    @property
    def positions(self) -> np.ndarray:
        return self.dx * np.arange(self.points)

    @property
    def momenta(self) -> np.ndarray:
        """Ascending momentum grid"""
        return self.dp * np.arange(-self.points // 2, self.points // 2)

    @classmethod
    def from_momenta(cls, grid: np.ndarray, spacing: float) -> "SpatialGrid":
        periods = 2.0 / spacing
        if abs(periods - round(periods)) > 1e-6:
            raise InconsistentBasisError("momentum spacing must divide 2ħk_L", {"spacing": spacing})
        spatial = cls(points=len(grid), periods=int(round(periods)))
        if not np.allclose(grid, spatial.momenta, atol=1e-9 * spatial.p_max):
            raise InconsistentBasisError("momentum grid is not centred on zero")
        return spatial

    def check_resolution(self, sigma_p: Optional[float]) -> None:
        if self.p_max < MOMENTUM_EXTENT - 1e-9:
            raise GridTooCoarseError("momentum grid does not reach the required extent",
                                     {"p_max": self.p_max, "required": MOMENTUM_EXTENT})
        if sigma_p is not None and self.dp > sigma_p / POINTS_PER_SIGMA * (1 + 1e-9):
            raise GridTooCoarseError("momentum spacing does not resolve the packet",
                                     {"dp": self.dp, "sigma_p": sigma_p})


def initial_wavepacket(p0: float, sigma_p: float, grid: Optional[SpatialGrid] = None) -> MomentumWavepacket:
    """Gaussian packet on the exact-solver grid"""
    grid = SpatialGrid.for_width(sigma_p) if grid is None else grid
    return gaussian_wavepacket(p0, sigma_p, grid.momenta, grid.dp)


def split_step_evolve(pulse: PulseEnvelope, detuning: DetuningProfile,
                      epsilon: Union[PolarizationError, float],
                      initial: MomentumWavepacket,
                      window: Optional[Tuple[float, float]] = None,
                      dt: Optional[float] = None,
                      trajectory_times: Optional[Sequence[float]] = None,
                      norm_tolerance: float = NORM_TOLERANCE) -> EvolutionResult:
    """
    Evolve a momentum-space packet under the full lattice Hamiltonian.

    Args:
        pulse: Envelope Ω(t)
        detuning: Detuning profile Δ(t)
        epsilon: Polarization error
        initial: Packet on a ``SpatialGrid`` momentum grid
        window: Evolution interval, pulse default when omitted
        dt: Step size (settings default 1e-3); shrunk so the window holds whole steps
        trajectory_times: Optional times (on the step lattice) to record zone populations
        norm_tolerance: Largest accepted |‖ψ‖² - 1|

    Returns:
        EvolutionResult whose final state is the evolved MomentumWavepacket
    """
    eps = epsilon.epsilon if isinstance(epsilon, PolarizationError) else float(epsilon)
    grid = SpatialGrid.from_momenta(initial.grid, initial.spacing)
    grid.check_resolution(initial.sigma_p)
    initial.check_normalized(norm_tolerance)

    default_dt = get_settings().split_step_dt
    dt = default_dt if dt is None else dt
    if dt > default_dt:
        logger.warning(f"Split-step dt={dt} is coarser than the default {default_dt}")
    start, end = default_window(pulse) if window is None else window
    if not window_covers_pulse(pulse, (start, end)):
        logger.warning(f"Window [{start}, {end}] does not cover the pulse support")
    steps = max(1, math.ceil((end - start) / dt - 1e-9))
    dt = (end - start) / steps

    record_steps = _record_steps(trajectory_times, start, dt, steps)

    momenta = np.fft.ifftshift(grid.momenta)
    half_kinetic = np.exp(-0.5j * momenta ** 2 * dt)
    lattice = 2.0 * np.cos(2.0 * grid.positions)
    orders = zone_orders(grid.momenta)
    order_range = tuple(range(int(orders.min()), int(orders.max()) + 1))

    psi = np.fft.ifftshift(initial.amplitudes).astype(complex)
    recorded = []
    if 0 in record_steps:
        recorded.append(_zone_snapshot(psi, orders, order_range, grid.dp))
    for step in range(steps):
        t_mid = start + (step + 0.5) * dt
        drive = pulse.value(t_mid) * (math.cos((4.0 + detuning.value_at(t_mid)) * t_mid) + eps)
        psi *= half_kinetic
        if drive != 0.0:
            position = np.fft.ifft(psi)
            position *= np.exp(-1j * dt * drive * lattice)
            psi = np.fft.fft(position)
        psi *= half_kinetic
        if step + 1 in record_steps:
            recorded.append(_zone_snapshot(psi, orders, order_range, grid.dp))

    final = MomentumWavepacket(grid=grid.momenta, amplitudes=np.fft.fftshift(psi), spacing=grid.dp,
                               p0=initial.p0, sigma_p=initial.sigma_p)
    drift = abs(final.norm - 1.0)
    if drift > norm_tolerance:
        raise NormDriftError("split-step evolution lost unitarity", {"norm_drift": drift})

    edge = final.density[np.abs(final.grid) > grid.p_max - 1.0].sum() * grid.dp
    diagnostics = Diagnostics(norm_drift=drift, step_count=steps, leakage=float(edge))
    if edge > 1e-3:
        diagnostics.flag(f"population {edge:.3e} reached the momentum grid edge")
        logger.warning(f"Split-step population {edge:.3e} at the grid edge")

    trajectory = None
    if record_steps:
        populations = np.array(recorded)
        times = start + dt * np.array(sorted(record_steps))
        trajectory = Trajectory(times=times, orders=order_range, populations=populations,
                                norms=populations.sum(axis=1))
    return EvolutionResult(final_state=final, populations=bin_populations(final),
                           diagnostics=diagnostics, trajectory=trajectory)


def _record_steps(trajectory_times, start: float, dt: float, steps: int) -> set:
    if trajectory_times is None:
        return set()
    indices = set()
    for t in trajectory_times:
        position = (t - start) / dt
        index = int(round(position))
        if abs(position - index) > 1e-6 or not 0 <= index <= steps:
            raise InconsistentBasisError("trajectory time does not fall on the step lattice",
                                         {"time": t, "dt": dt})
        indices.add(index)
    return indices


def _zone_snapshot(psi_fft_order: np.ndarray, orders: np.ndarray, order_range: tuple, dp: float) -> np.ndarray:
    density = np.abs(np.fft.fftshift(psi_fft_order)) ** 2 * dp
    return np.array([density[orders == order].sum() for order in order_range])
