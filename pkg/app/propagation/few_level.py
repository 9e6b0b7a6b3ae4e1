"""
Adaptive propagation of few-level models.

All samples sharing a pulse and detuning are integrated together as one block
system with an embedded Runge-Kutta pair (DOP853), so cost evaluations over
many (ε, p) samples cost one ODE solve.
"""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp

from app.config import get_settings
from app.errors import InconsistentBasisError, NormDriftError, ToleranceNotMetError
from app.model.detuning import DetuningProfile, PolarizationError
from app.model.hamiltonian import FewLevelModel
from app.model.pulses import PulseEnvelope, closed_support_value, default_window, window_covers_pulse
from app.multilevel.basis import FewLevelState, MomentumBasis, Picture, bare_amplitudes

from .models import LEAKAGE_FLAG_THRESHOLD, Diagnostics, EvolutionResult, SampleEvolution, Trajectory
from .wavepacket import assemble_wavepacket, bin_populations, family_samples

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-8
# Right-hand-side evaluations per DOP853 step
STAGES_PER_STEP = 12


def propagate_samples(model: FewLevelModel, pulse: PulseEnvelope, detuning: DetuningProfile,
                      epsilons: Union[Sequence[float], np.ndarray],
                      momenta: Union[Sequence[float], np.ndarray, None] = None,
                      window: Optional[Tuple[float, float]] = None,
                      tol: Optional[float] = None,
                      atol: Optional[float] = None,
                      norm_tolerance: float = NORM_TOLERANCE,
                      trajectory_times: Optional[np.ndarray] = None) -> SampleEvolution:
    """
    Integrate i dψ/dt = H(t) ψ for every sample from the first basis state.

    Args:
        model: Few-level model tier
        pulse: Envelope Ω(t)
        detuning: Detuning profile Δ(t)
        epsilons: Polarization errors, shape (S,)
        momenta: Family momenta, shape (S,); zeros when omitted
        window: Evolution interval, pulse default when omitted
        tol: Relative tolerance of the embedded pair (settings default 1e-10)
        atol: Absolute tolerance (settings default 1e-12)
        norm_tolerance: Largest accepted |‖ψ‖² - 1| at the end
        trajectory_times: Optional increasing times at which to record populations

    Returns:
        SampleEvolution with final amplitudes and bare-order populations
    """
    settings = get_settings()
    rtol = settings.few_level_rtol if tol is None else tol
    atol = min(settings.few_level_atol, rtol * 1e-2) if atol is None else atol
    epsilons = np.atleast_1d(np.asarray(epsilons, dtype=float))
    momenta = np.zeros_like(epsilons) if momenta is None else np.atleast_1d(np.asarray(momenta, dtype=float))
    if epsilons.shape != momenta.shape:
        raise InconsistentBasisError("epsilon and momentum samples differ in length",
                                     {"epsilons": epsilons.size, "momenta": momenta.size})
    model.check_detuning(detuning)
    model.check_momenta(momenta)

    start, end = default_window(pulse) if window is None else window
    if not window_covers_pulse(pulse, (start, end)):
        logger.warning(f"Window [{start}, {end}] does not cover the pulse support")

    size, dim = epsilons.size, model.dimension

    def rhs(t, y):
        psi = y.reshape(size, dim)
        h = model.matrices(t, closed_support_value(pulse, t), detuning.value_at(t), epsilons, momenta)
        return (-1j * np.einsum("sij,sj->si", h, psi)).ravel()

    y0 = model.initial_amplitudes(size).ravel()
    t_eval = None
    if trajectory_times is not None:
        t_eval = np.unique(np.append(np.clip(np.asarray(trajectory_times, dtype=float), start, end), end))
    solution = solve_ivp(rhs, (start, end), y0, method="DOP853", rtol=rtol, atol=atol, t_eval=t_eval)
    if not solution.success:
        raise ToleranceNotMetError(f"integrator failed: {solution.message}",
                                   {"rtol": rtol, "atol": atol, "window": [start, end]})

    final = solution.y[:, -1].reshape(size, dim)
    drift = np.abs(np.sum(np.abs(final) ** 2, axis=1) - 1.0)
    if np.max(drift) > norm_tolerance:
        raise NormDriftError("unitarity drift beyond tolerance",
                             {"norm_drift": float(np.max(drift)), "tolerance": norm_tolerance})

    evolution = SampleEvolution(
        amplitudes=final,
        bare_populations=model.bare_populations(final),
        orders=model.orders,
        norm_drift=drift,
        step_count=-(-solution.nfev // STAGES_PER_STEP),
    )
    if t_eval is not None:
        states = solution.y.T.reshape(-1, size, dim)
        evolution.trajectory_times = solution.t
        evolution.trajectory_populations = np.stack([model.bare_populations(s) for s in states])
    return evolution


def propagate_few_level(model: FewLevelModel, pulse: PulseEnvelope, detuning: DetuningProfile,
                        epsilon: Union[PolarizationError, float] = 0.0,
                        basis: Optional[MomentumBasis] = None,
                        window: Optional[Tuple[float, float]] = None,
                        tol: Optional[float] = None,
                        trajectory_times: Optional[np.ndarray] = None) -> EvolutionResult:
    """
    Evolve one Bragg family from its first basis state.

    Args:
        model: Few-level model tier (TLS, RWA, lab or interaction picture)
        pulse: Envelope Ω(t)
        detuning: Detuning profile Δ(t)
        epsilon: Polarization error
        basis: Momentum basis; must match the model truncation when given
        window: Evolution interval, pulse default when omitted
        tol: Relative integrator tolerance
        trajectory_times: Optional times at which to record bare populations

    Returns:
        EvolutionResult with final state, bare populations and diagnostics
    """
    eps = epsilon.epsilon if isinstance(epsilon, PolarizationError) else float(epsilon)
    momentum = 0.0 if basis is None else basis.momentum
    if basis is not None and basis.dimension != model.dimension:
        raise InconsistentBasisError("basis truncation does not match the model",
                                     {"basis": basis.dimension, "model": model.dimension})

    evolution = propagate_samples(model, pulse, detuning, [eps], [momentum], window=window, tol=tol,
                                  trajectory_times=trajectory_times)
    populations = {order: float(value) for order, value in zip(evolution.orders, evolution.bare_populations[0])}
    diagnostics = Diagnostics(norm_drift=float(evolution.norm_drift[0]), step_count=evolution.step_count,
                              leakage=float(evolution.outer_shell[0]) if model.n_max > 1 else 0.0)
    if diagnostics.leakage > LEAKAGE_FLAG_THRESHOLD:
        diagnostics.flag(f"outer-shell population {diagnostics.leakage:.3e} exceeds {LEAKAGE_FLAG_THRESHOLD}")
        logger.warning(f"Truncation leakage {diagnostics.leakage:.3e} at n_max={model.n_max}")

    if basis is not None:
        picture = Picture.LAB if model.name == "lab" else Picture.INTERACTION
        final_state = FewLevelState(basis, evolution.amplitudes[0], picture, norm_tolerance=NORM_TOLERANCE)
    else:
        final_state = evolution.amplitudes[0]

    trajectory = None
    if evolution.trajectory_times is not None:
        series = evolution.trajectory_populations[:, 0, :]
        trajectory = Trajectory(times=evolution.trajectory_times, orders=evolution.orders,
                                populations=series, norms=series.sum(axis=1))
    return EvolutionResult(final_state=final_state, populations=populations,
                           diagnostics=diagnostics, trajectory=trajectory)


def evolve_wavepacket_few_level(model: FewLevelModel, pulse: PulseEnvelope, detuning: DetuningProfile,
                                epsilon: Union[PolarizationError, float], p0: float, sigma_p: float,
                                window: Optional[Tuple[float, float]] = None,
                                tol: Optional[float] = None) -> EvolutionResult:
    """
    Evolve a Gaussian packet family by family and superpose the results.

    Momentum samples cover p0 ± 6σ_p inside the first Brillouin zone.
    """
    if model.name in ("tls", "rwa"):
        raise InconsistentBasisError("wavepacket assembly needs a multilevel model", {"tier": model.name})
    eps = epsilon.epsilon if isinstance(epsilon, PolarizationError) else float(epsilon)
    momenta, weights, spacing = family_samples(p0, sigma_p)
    evolution = propagate_samples(model, pulse, detuning, np.full(momenta.size, eps), momenta,
                                  window=window, tol=tol)
    bare = bare_amplitudes(evolution.amplitudes, model.n_max)
    packet = assemble_wavepacket(momenta, bare, weights, spacing, p0=p0, sigma_p=sigma_p)
    diagnostics = Diagnostics(norm_drift=float(np.max(evolution.norm_drift)), step_count=evolution.step_count,
                              leakage=float(np.sum(np.abs(weights) ** 2 * evolution.outer_shell) * spacing))
    if diagnostics.leakage > LEAKAGE_FLAG_THRESHOLD:
        diagnostics.flag(f"outer-shell population {diagnostics.leakage:.3e} exceeds {LEAKAGE_FLAG_THRESHOLD}")
    return EvolutionResult(final_state=packet, populations=bin_populations(packet), diagnostics=diagnostics)
