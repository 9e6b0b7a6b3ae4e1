#!/usr/bin/env python3
"""
Test suite for the effective two-level description
Double Bragg Diffraction Toolkit

Covers:
- Effective and RWA Hamiltonian entries
- Differential light shift, Rabi formula and pulse-area conditions
- Magnus quadrature and the AC-Stark coefficient
- Closed-form versus propagated RWA evolution
"""

import logging
import math
import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '.'))

from app.effective import (
    LIGHT_SHIFT_COEFFICIENT,
    EffectiveTlsModel,
    RwaHamiltonian,
    RwaModel,
    ac_stark_rate,
    build_tls_hamiltonian,
    differential_light_shift,
    gaussian_pulse_area_population,
    magnus_terms,
    pi_pulse_duration,
    rabi_population,
    second_order_series,
    tls_matrices,
)
from app.errors import IncompatibleTierError, InvalidParameterError, QuadratureResolutionTooCoarseError
from app.model import DetuningProfile, PulseEnvelope
from app.propagation import propagate_few_level, propagate_samples

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def test_effective_hamiltonian_at_origin():
    h = build_tls_hamiltonian(2.0, 0.0, 0.0, 0.0).matrix
    assert h.shape == (2, 2)
    assert h[0, 0] == pytest.approx(0.0)
    assert h[1, 1] == pytest.approx(-0.1875)
    assert h[0, 1] == pytest.approx(2.0 * math.sqrt(2.0))
    assert h[1, 0] == pytest.approx(2.0 * math.sqrt(2.0))


def test_effective_hamiltonian_polarization_terms():
    h = build_tls_hamiltonian(2.0, 0.0, 0.1, 0.0).matrix
    assert h[0, 0].real == pytest.approx(0.08)
    assert h[1, 1].real == pytest.approx(4.0 * (-3.0 / 64.0 - 0.025 + 5.0 * 0.01 / 12.0))
    assert h[0, 1] == pytest.approx(math.sqrt(2.0) * (2.0 + 0.2))


def test_effective_hamiltonian_hermitian():
    rng = np.random.default_rng(7)
    for _ in range(20):
        omega, delta, t = rng.uniform(0.0, 3.0), rng.uniform(-1.0, 1.0), rng.uniform(-5.0, 5.0)
        stack = tls_matrices(omega, delta, rng.uniform(0.0, 0.3, size=4), t)
        assert stack.shape == (4, 2, 2)
        np.testing.assert_allclose(stack, np.conj(np.swapaxes(stack, 1, 2)), atol=1e-14)


def test_differential_light_shift():
    assert LIGHT_SHIFT_COEFFICIENT == pytest.approx(3.0 / 64.0)
    assert differential_light_shift(2.0, 0.0) == pytest.approx(-0.1875)
    assert differential_light_shift(2.0, -0.1875) == pytest.approx(0.0)

    rwa = RwaHamiltonian.from_detuning(2.0, 0.25)
    assert rwa.delta_diff == pytest.approx(-0.4375)
    np.testing.assert_allclose(rwa.matrix, rwa.matrix.conj().T)
    assert rwa.matrix[0, 1] == pytest.approx(math.sqrt(2.0))


def test_rabi_population():
    omega = 2.0
    pi_time = math.pi / (math.sqrt(2.0) * omega)
    assert rabi_population(omega, 0.0, pi_time) == pytest.approx(1.0)
    assert rabi_population(omega, 0.0, 0.0) == pytest.approx(0.0)
    assert rabi_population(0.0, 0.0, 1.0) == 0.0

    detuned = rabi_population(omega, 1.0, np.linspace(0.0, 10.0, 101))
    assert detuned.max() <= 8.0 / 9.0 + 1e-12
    assert isinstance(rabi_population(omega, 0.1, 1.0), float)


def test_pulse_area_conditions():
    assert pi_pulse_duration(2.0) == pytest.approx(math.sqrt(math.pi) / 4.0)
    assert gaussian_pulse_area_population(2.0, pi_pulse_duration(2.0)) == pytest.approx(1.0)
    assert gaussian_pulse_area_population(1.0, 2.0 * pi_pulse_duration(1.0)) == pytest.approx(0.0, abs=1e-12)


def test_magnus_terms_constant_hamiltonian():
    h = np.array([[0.3, 0.1], [0.1, -0.2]], dtype=complex)
    times = np.linspace(0.0, 2.0, 2001)
    terms = magnus_terms(times, np.broadcast_to(h, (times.size, 2, 2)), max_step=1e-3)
    np.testing.assert_allclose(terms.g1, -2j * h, atol=1e-12)
    np.testing.assert_allclose(terms.g2, 0.0, atol=1e-12)
    np.testing.assert_allclose(terms.effective_hamiltonian, h, atol=1e-12)


def test_magnus_terms_zero_and_errors():
    times = np.linspace(0.0, 1.0, 11)
    terms = magnus_terms(times, np.zeros((11, 3, 3)), max_step=0.1)
    assert np.all(terms.g1 == 0.0) and np.all(terms.g2 == 0.0)

    with pytest.raises(QuadratureResolutionTooCoarseError):
        magnus_terms(times, np.zeros((11, 3, 3)), max_step=0.01)
    with pytest.raises(InvalidParameterError):
        magnus_terms(times[:2], np.zeros((2, 3, 3)), max_step=1.0)


@pytest.mark.filterwarnings("error::numpy.exceptions.ComplexWarning")
def test_magnus_second_term_keeps_complex_phases():
    # Single off-resonant coupling v·e^{-iωt}: i·G2 is diag(-v²T/ω, +v²T/ω) over whole periods
    v, omega = 0.3, 4.0
    times = np.linspace(0.0, 10.0 * math.pi, 31417)
    h = np.zeros((times.size, 2, 2), dtype=complex)
    h[:, 0, 1] = v * np.exp(-1j * omega * times)
    h[:, 1, 0] = np.conj(h[:, 0, 1])
    terms = magnus_terms(times, h, max_step=1.1e-3)
    duration = times[-1]
    shifts = np.real(np.diag(1j * terms.g2))
    np.testing.assert_allclose(shifts, [-v * v * duration / omega, v * v * duration / omega], rtol=1e-5)

    series = second_order_series(times, h, max_step=1.1e-3)
    np.testing.assert_allclose(series[-1], terms.g2, atol=1e-6)


@pytest.mark.filterwarnings("error::numpy.exceptions.ComplexWarning")
@pytest.mark.parametrize("epsilon", [0.0, 0.1, 0.2])
def test_ac_stark_rates_match_effective_coefficients(epsilon):
    omega = 0.5
    rates = ac_stark_rate(omega, epsilon, step=2e-3)
    h = build_tls_hamiltonian(omega, 0.0, epsilon, 0.0).matrix
    assert rates[0] == pytest.approx(h[0, 0].real, rel=0.02, abs=1e-6)
    assert rates[1] == pytest.approx(h[1, 1].real, rel=0.02, abs=1e-6)
    assert rates[0] == pytest.approx(omega ** 2 * (epsilon / 4.0 - epsilon ** 2 / 2.0), rel=0.02, abs=1e-6)
    if epsilon == 0.0:
        assert rates[1] == pytest.approx(-LIGHT_SHIFT_COEFFICIENT * omega ** 2, rel=0.02)
        assert -LIGHT_SHIFT_COEFFICIENT * omega ** 2 == pytest.approx(-0.01171875)


def test_rwa_closed_form_matches_propagation():
    omega, delta, tau = 2.0, 0.25, 1.3
    pulse = PulseEnvelope.box(omega, tau)
    result = propagate_few_level(RwaModel(), pulse, DetuningProfile.constant(delta), tol=1e-12)
    excited = result.population(1) + result.population(-1)
    closed = rabi_population(omega, differential_light_shift(omega, delta), tau)
    assert excited == pytest.approx(closed, abs=1e-8)
    assert result.population(1) == pytest.approx(result.population(-1))


def test_tls_resonant_gaussian_transfer():
    pulse = PulseEnvelope.gaussian(2.0, 0.47)
    evolution = propagate_samples(EffectiveTlsModel(), pulse, DetuningProfile.constant(0.25), [0.0])
    assert evolution.port(1)[0] + evolution.port(-1)[0] > 0.95


def test_two_level_tiers_reject_incompatible_inputs():
    pulse = PulseEnvelope.gaussian(2.0, 0.47)
    sweep = DetuningProfile.linear(slope=0.5, t_ref=0.0)
    for model in (EffectiveTlsModel(), RwaModel()):
        with pytest.raises(IncompatibleTierError):
            propagate_samples(model, pulse, sweep, [0.0])
        with pytest.raises(IncompatibleTierError):
            propagate_samples(model, pulse, DetuningProfile.constant(0.0), [0.0], [0.1])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
