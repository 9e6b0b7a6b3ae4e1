"""
Effective two-level description

Effective Hamiltonian with counter-rotating, polarization-error and light-shift
terms, its RWA limit, the Rabi and Gaussian pulse-area closed forms, the
two-level model tiers and a Magnus-expansion quadrature.
"""

from .tls import (
    LIGHT_SHIFT_COEFFICIENT,
    RwaHamiltonian,
    TlsHamiltonian,
    build_tls_hamiltonian,
    differential_light_shift,
    gaussian_pulse_area_population,
    pi_pulse_duration,
    rabi_population,
    tls_matrices,
)
from .models import EffectiveTlsModel, RwaModel
from .magnus import MagnusTerms, ac_stark_rate, magnus_terms, second_order_series

__all__ = [
    'LIGHT_SHIFT_COEFFICIENT',
    'RwaHamiltonian',
    'TlsHamiltonian',
    'build_tls_hamiltonian',
    'differential_light_shift',
    'gaussian_pulse_area_population',
    'pi_pulse_duration',
    'rabi_population',
    'tls_matrices',
    'EffectiveTlsModel',
    'RwaModel',
    'MagnusTerms',
    'ac_stark_rate',
    'magnus_terms',
    'second_order_series',
]
