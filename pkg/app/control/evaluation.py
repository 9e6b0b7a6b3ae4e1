"""
Port populations, costs and efficiency maps for a control candidate.

A candidate is a pulse with its detuning profile; it is evaluated on the
multilevel interaction-picture model over a batch of error samples.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from app.model.detuning import DetuningProfile
from app.model.hamiltonian import FewLevelModel
from app.model.pulses import PulseEnvelope
from app.multilevel.models import InteractionPictureModel
from app.propagation.few_level import propagate_samples
from app.records import ScanRecord

from .cost import dbd_efficiency, sample_cost, weighted_cost
from .sampling import ErrorSample, sample_arrays

logger = logging.getLogger(__name__)

# τ resolution used to locate first-Rabi-cycle peaks
PEAK_SCAN_STEP = 0.005


@dataclass(frozen=True)
class ControlCandidate:
    pulse: PulseEnvelope
    detuning: DetuningProfile


def evaluate_ports(candidate: ControlCandidate, epsilons: np.ndarray, momenta: np.ndarray,
                   model: Optional[FewLevelModel] = None, tol: Optional[float] = None,
                   norm_tolerance: float = 1e-8) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Bare populations of |p + 2⟩, |p - 2⟩ and |p⟩ for each sample.

    Returns:
        (plus, minus, undiffracted) arrays of shape (S,)
    """
    model = InteractionPictureModel(2) if model is None else model
    evolution = propagate_samples(model, candidate.pulse, candidate.detuning, epsilons, momenta,
                                  tol=tol, norm_tolerance=norm_tolerance)
    return evolution.port(1), evolution.port(-1), evolution.port(0)


def candidate_cost(candidate: ControlCandidate, samples: Sequence[ErrorSample],
                   model: Optional[FewLevelModel] = None, tol: Optional[float] = None,
                   norm_tolerance: float = 1e-8) -> float:
    """Weighted beam-splitter cost of the candidate over the samples"""
    epsilons, momenta, weights = sample_arrays(list(samples))
    plus, minus, _ = evaluate_ports(candidate, epsilons, momenta, model, tol, norm_tolerance)
    return weighted_cost(np.clip(plus, 0.0, 1.0), np.clip(minus, 0.0, 1.0), weights)


def efficiency_map(candidate: ControlCandidate, epsilon_grid: Sequence[float], momentum_grid: Sequence[float],
                   model: Optional[FewLevelModel] = None, tol: Optional[float] = None) -> List[ScanRecord]:
    """
    OCT BS efficiency 1 - cost on every (ε, p) grid point.

    Records are ordered ε-major, p-minor.
    """
    epsilon_grid = np.asarray(epsilon_grid, dtype=float)
    momentum_grid = np.asarray(momentum_grid, dtype=float)
    if not (np.all(np.isfinite(epsilon_grid)) and np.all(np.isfinite(momentum_grid))):
        raise ValueError("efficiency map grids must be finite")
    eps, mom = np.meshgrid(epsilon_grid, momentum_grid, indexing="ij")
    plus, minus, zero = evaluate_ports(candidate, eps.ravel(), mom.ravel(), model, tol)
    plus, minus = np.clip(plus, 0.0, 1.0), np.clip(minus, 0.0, 1.0)
    efficiency = 1.0 - sample_cost(plus, minus)
    logger.info(f"Efficiency map over {eps.size} points: min {efficiency.min():.4f}, max {efficiency.max():.4f}")
    return [
        ScanRecord(
            parameters={"epsilon": float(e), "p": float(p)},
            populations={-1: float(m), 0: float(z), 1: float(q)},
            metrics={"oct_bs_efficiency": float(eff), "dbd_efficiency": float(dbd_efficiency(q, m))},
        )
        for e, p, q, m, z, eff in zip(eps.ravel(), mom.ravel(), plus, minus, zero, efficiency)
    ]


def first_cycle_peak(omega_r: float, detuning_for: Callable[[PulseEnvelope], DetuningProfile],
                     epsilons: Sequence[float], t0: float = 0.0,
                     tau_range: Optional[Tuple[float, float]] = None, step: float = PEAK_SCAN_STEP,
                     model: Optional[FewLevelModel] = None,
                     tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Largest DBD efficiency within the first Rabi cycle, per polarization error.

    Scans the Gaussian width τ over [0.5, 1.5]·τ_π (τ_π = √π/(2Ω_R)) unless a
    range is given; the detuning is rebuilt for every τ.

    Returns:
        (peak efficiencies, τ at the peak), each of shape (len(epsilons),)
    """
    epsilons = np.asarray(epsilons, dtype=float)
    if tau_range is None:
        tau_pi = math.sqrt(math.pi) / (2.0 * omega_r)
        tau_range = (0.5 * tau_pi, 1.5 * tau_pi)
    taus = np.arange(tau_range[0], tau_range[1] + 0.5 * step, step)
    best = np.full(epsilons.shape, -np.inf)
    best_tau = np.zeros(epsilons.shape)
    for tau in taus:
        pulse = PulseEnvelope.gaussian(omega_r, float(tau), t0)
        candidate = ControlCandidate(pulse, detuning_for(pulse))
        plus, minus, _ = evaluate_ports(candidate, epsilons, np.zeros_like(epsilons), model, tol)
        efficiency = dbd_efficiency(plus, minus)
        improved = efficiency > best
        best = np.where(improved, efficiency, best)
        best_tau = np.where(improved, tau, best_tau)
    return best, best_tau


def constant_detuning_optimum(omega_r: float, tau: float, epsilons: Sequence[float],
                              deltas: Sequence[float], model: Optional[FewLevelModel] = None,
                              tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Scan constant detunings at fixed pulse parameters.

    Returns:
        (Δ_opt per ε, peak efficiency per ε, efficiency table of shape (len(deltas), len(epsilons)))
    """
    epsilons = np.asarray(epsilons, dtype=float)
    deltas = np.asarray(deltas, dtype=float)
    pulse = PulseEnvelope.gaussian(omega_r, tau)
    table = np.empty((deltas.size, epsilons.size))
    for row, delta in enumerate(deltas):
        candidate = ControlCandidate(pulse, DetuningProfile.constant(float(delta)))
        plus, minus, _ = evaluate_ports(candidate, epsilons, np.zeros_like(epsilons), model, tol)
        table[row] = dbd_efficiency(plus, minus)
    best_rows = np.argmax(table, axis=0)
    return deltas[best_rows], table[best_rows, np.arange(epsilons.size)], table
