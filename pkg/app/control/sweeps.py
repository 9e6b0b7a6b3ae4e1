"""
Linear detuning sweeps used as robust baselines.
"""

from app.model.detuning import DEFAULT_DETUNING_BOUND, DetuningProfile


def linear_sweep_polarization(tau: float, t0: float = 0.0,
                              bound: float = DEFAULT_DETUNING_BOUND) -> DetuningProfile:
    """Δ(t) = (t - t0 + τ) / (2.5 τ), the polarization-robust sweep; τ must be positive"""
    return DetuningProfile.sweep_polarization(tau, t0, bound)


def linear_sweep_doppler(tau: float, bound: float = DEFAULT_DETUNING_BOUND) -> DetuningProfile:
    """Δ(t) = (t + 0.9 τ) / (5 τ), the Doppler-robust sweep; τ must be positive"""
    return DetuningProfile.sweep_doppler(tau, bound)
