#!/usr/bin/env python3
"""
Test suite for the multilevel Bragg family models
Double Bragg Diffraction Toolkit

Covers:
- Momentum basis layout and bare-order mapping
- Lab-frame and interaction-picture Hamiltonian entries
- Hermiticity, parity decoupling and picture equivalence
- Truncation convergence and the Doppler asymmetry helpers
"""

import logging
import math
import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '.'))

from app.errors import BasisTooSmallError, InvalidParameterError, NormDriftError
from app.model import DetuningProfile, PulseEnvelope
from app.multilevel import (
    FewLevelState,
    InteractionPictureModel,
    LabFrameModel,
    MomentumBasis,
    antisymmetric_index,
    asymmetry_energy_defect,
    bare_amplitudes,
    build_interaction_hamiltonian,
    build_lab_hamiltonian,
    doppler_shift,
    symmetric_index,
)
from app.propagation import propagate_few_level

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

PULSE = PulseEnvelope.gaussian(2.0, 0.47)
RESONANT = DetuningProfile.constant(0.25)


def test_basis_layout():
    basis = MomentumBasis(0.2, n_max=2)
    assert basis.dimension == 5
    assert basis.labels == ["|p>", "|1,+>", "|1,->", "|2,+>", "|2,->"]
    assert basis.orders == [-2, -1, 0, 1, 2]
    np.testing.assert_allclose(basis.bare_momenta, [-3.8, -1.8, 0.2, 2.2, 4.2])
    assert (symmetric_index(1), antisymmetric_index(1), symmetric_index(2)) == (1, 2, 3)


def test_basis_rejects_bad_input():
    with pytest.raises(BasisTooSmallError):
        MomentumBasis(0.0, n_max=0)
    with pytest.raises(InvalidParameterError):
        MomentumBasis(1.0)
    with pytest.raises(BasisTooSmallError):
        InteractionPictureModel(0)


def test_bare_amplitude_mapping():
    amplitudes = np.zeros(5, dtype=complex)
    amplitudes[symmetric_index(1)] = 1.0
    bare = bare_amplitudes(amplitudes, 2)
    np.testing.assert_allclose(np.abs(bare) ** 2, [0.0, 0.5, 0.0, 0.5, 0.0])

    amplitudes[:] = 0.0
    amplitudes[symmetric_index(1)] = amplitudes[antisymmetric_index(1)] = 1.0 / math.sqrt(2.0)
    state = FewLevelState(MomentumBasis(0.0), amplitudes)
    assert state.bare_populations()[1] == pytest.approx(1.0)
    assert state.bare_populations()[-1] == pytest.approx(0.0)


def test_state_normalization():
    state = FewLevelState.initial(MomentumBasis(0.0, n_max=3))
    assert state.norm == pytest.approx(1.0)
    assert state.bare_populations()[0] == 1.0
    with pytest.raises(NormDriftError):
        FewLevelState(MomentumBasis(0.0), np.full(5, 0.5))


def test_lab_hamiltonian_entries():
    basis = MomentumBasis(0.2, n_max=2)
    h = build_lab_hamiltonian(basis, 2.0, 0.1, DetuningProfile.constant(0.0), 0.0)
    assert h[1, 2].real == pytest.approx(0.8)
    assert h[3, 4].real == pytest.approx(1.6)
    assert h[0, 1].real == pytest.approx(3.1113, abs=1e-4)
    assert h[0, 0].real == pytest.approx(0.04)
    assert h[3, 3].real == pytest.approx(16.04)


def test_interaction_hamiltonian_entries():
    basis = MomentumBasis(0.2, n_max=2)
    h = build_interaction_hamiltonian(basis, 2.0, 0.1, DetuningProfile.constant(0.0), 0.0)
    assert h[0, 1] == pytest.approx(math.sqrt(2.0) * 2.0 * 1.1)
    assert h[1, 2] == pytest.approx(0.8)
    np.testing.assert_allclose(np.diag(h), 0.0)


def test_hamiltonians_hermitian():
    rng = np.random.default_rng(11)
    for n_max in (1, 2, 4):
        for _ in range(10):
            basis = MomentumBasis(rng.uniform(-1.0, 1.0), n_max=n_max)
            detuning = DetuningProfile.constant(rng.uniform(-1.0, 1.0))
            t, eps = rng.uniform(-3.0, 3.0), rng.uniform(0.0, 0.3)
            for h in (build_lab_hamiltonian(basis, 2.0, eps, detuning, t),
                      build_interaction_hamiltonian(basis, 2.0, eps, detuning, t)):
                np.testing.assert_allclose(h, h.conj().T, atol=1e-14)


def test_parity_decoupling_at_rest():
    basis = MomentumBasis(0.0, n_max=2)
    result = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT, 0.1, basis=basis)
    amplitudes = result.final_state.amplitudes
    leakage = sum(abs(amplitudes[antisymmetric_index(n)]) ** 2 for n in (1, 2))
    assert leakage < 1e-8
    assert result.population(1) == pytest.approx(result.population(-1), abs=1e-8)


def test_lab_and_interaction_pictures_agree():
    basis = MomentumBasis(0.1, n_max=2)
    lab = propagate_few_level(LabFrameModel(2), PULSE, RESONANT, 0.1, basis=basis, tol=1e-12)
    interaction = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT, 0.1, basis=basis, tol=1e-12)
    for order in basis.orders:
        assert lab.population(order) == pytest.approx(interaction.population(order), abs=1e-8)


def test_optimal_constant_detuning_inverts():
    result = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT)
    assert result.population(1) + result.population(-1) == pytest.approx(1.0, abs=1e-2)
    assert result.diagnostics.norm_drift < 1e-8


def test_truncation_converges():
    five = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT, 0.1)
    nine = propagate_few_level(InteractionPictureModel(4), PULSE, RESONANT, 0.1)
    for order in (-1, 0, 1):
        assert five.population(order) == pytest.approx(nine.population(order), abs=1e-3)
    assert nine.population(3) + nine.population(-3) < 1e-4


def test_doppler_helpers():
    assert doppler_shift(0.2, 1) == pytest.approx(0.8)
    assert doppler_shift(-0.1, 2) == pytest.approx(-0.8)
    np.testing.assert_allclose(doppler_shift(np.array([0.1, 0.2]), 1), [0.4, 0.8])

    assert asymmetry_energy_defect(0.2, "right") == pytest.approx(0.8)
    assert asymmetry_energy_defect(0.2, "left") == pytest.approx(-0.8)
    assert asymmetry_energy_defect(0.2, 1) == pytest.approx(0.8)
    with pytest.raises(InvalidParameterError):
        asymmetry_energy_defect(0.2, "up")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
