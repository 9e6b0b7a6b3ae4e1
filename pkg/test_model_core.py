#!/usr/bin/env python3
"""
Test suite for the model core
Double Bragg Diffraction Toolkit

Covers:
- Pulse envelopes and evolution windows
- Detuning profiles, clamping and the lattice coupling factor
- Recoil-unit / SI conversion
- JSON pulse and detuning documents
"""

import ast
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '.'))

from app.control.sweeps import linear_sweep_doppler, linear_sweep_polarization
from app.errors import InvalidParameterError, MissingSiContextError
from app.model import (
    Direction,
    DetuningProfile,
    PolarizationError,
    PulseEnvelope,
    Quantity,
    SiContext,
    UnitSystem,
    coupling_factor,
    default_window,
    detuning_value,
    envelope_value,
    si_convert,
    window_covers_pulse,
)
from app.model.documents import DetuningDocument, PulseDocument

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def test_gaussian_envelope():
    pulse = PulseEnvelope.gaussian(2.0, 0.47)
    assert envelope_value(pulse, 0.0) == pytest.approx(2.0)
    assert envelope_value(pulse, 0.47) == pytest.approx(2.0 * math.exp(-0.5), abs=1e-5)
    assert envelope_value(pulse, 0.47) == pytest.approx(1.21306, abs=1e-5)

    shifted = PulseEnvelope.gaussian(1.617, 0.583, 2.859)
    offsets = np.linspace(0.0, 3.0, 31)
    np.testing.assert_allclose(shifted.value(2.859 + offsets), shifted.value(2.859 - offsets))


def test_box_envelope():
    pulse = PulseEnvelope.box(2.0, 1.0)
    assert envelope_value(pulse, 0.5) == 2.0
    assert envelope_value(pulse, -0.1) == 0.0
    assert envelope_value(pulse, 1.0) == 0.0
    np.testing.assert_array_equal(pulse.value(np.array([-1.0, 0.0, 0.99, 2.0])), [0.0, 2.0, 2.0, 0.0])


def test_invalid_pulses():
    with pytest.raises(InvalidParameterError):
        PulseEnvelope.gaussian(2.0, 0.0)
    with pytest.raises(InvalidParameterError):
        PulseEnvelope.box(-1.0, 1.0)


def test_default_windows():
    assert default_window(PulseEnvelope.box(2.0, 3.0)) == (0.0, 3.0)
    start, end = default_window(PulseEnvelope.gaussian(2.0, 0.47))
    assert start == pytest.approx(-2.35)
    assert end == pytest.approx(2.35)
    assert default_window(PulseEnvelope.gaussian(1.646, 0.788, 4.770)) == (0.0, pytest.approx(9.54))

    pulse = PulseEnvelope.gaussian(2.0, 0.47)
    assert window_covers_pulse(pulse, pulse.default_window())
    assert not window_covers_pulse(pulse, (-0.5, 0.5))


def test_detuning_profiles():
    constant = DetuningProfile.constant(0.25)
    assert not constant.is_time_dependent
    assert detuning_value(constant, 3.0) == 0.25
    np.testing.assert_allclose(constant.value_at(np.zeros(4)), 0.25)

    sweep = linear_sweep_polarization(tau=0.47)
    assert sweep.is_time_dependent
    assert detuning_value(sweep, -0.47) == pytest.approx(0.0)
    assert detuning_value(sweep, 0.0) == pytest.approx(0.4)

    doppler = linear_sweep_doppler(tau=0.45)
    assert detuning_value(doppler, -0.9 * 0.45) == pytest.approx(0.0)
    assert detuning_value(doppler, 0.0) == pytest.approx(0.9 / 5.0)


@pytest.mark.parametrize("tau", [0.0, -1.0, float("nan"), float("inf")])
def test_sweeps_reject_non_positive_width(tau):
    with pytest.raises(InvalidParameterError):
        DetuningProfile.sweep_polarization(tau)
    with pytest.raises(InvalidParameterError):
        DetuningProfile.sweep_doppler(tau)
    with pytest.raises(InvalidParameterError):
        linear_sweep_polarization(tau)
    with pytest.raises(InvalidParameterError):
        linear_sweep_doppler(tau)


def test_document_sweeps_match_control_sweeps():
    pulse = PulseEnvelope.gaussian(2.0, 0.45, 1.2)
    times = np.linspace(0.0, 2.4, 9)
    np.testing.assert_allclose(DetuningDocument(kind="sweep_polarization").to_domain(pulse).value_at(times),
                               linear_sweep_polarization(0.45, 1.2).value_at(times))
    np.testing.assert_allclose(DetuningDocument(kind="sweep_doppler").to_domain(pulse).value_at(times),
                               linear_sweep_doppler(0.45).value_at(times))


def test_model_package_does_not_import_control():
    for path in Path(__file__).parent.joinpath("app", "model").glob("*.py"):
        tree = ast.parse(path.read_text(encoding="utf-8"))
        for node in ast.walk(tree):
            if isinstance(node, ast.ImportFrom):
                modules = [node.module or ""]
            elif isinstance(node, ast.Import):
                modules = [alias.name for alias in node.names]
            else:
                continue
            assert not any(m.startswith("app.control") for m in modules), path.name


def test_detuning_clamped_to_bound():
    ramp = DetuningProfile.linear(slope=10.0, t_ref=0.0)
    assert detuning_value(ramp, 10.0) == 4.0
    assert detuning_value(ramp, -10.0) == -4.0
    np.testing.assert_allclose(ramp.value_at(np.array([-1.0, 0.1, 1.0])), [-4.0, 1.0, 4.0])

    assert detuning_value(DetuningProfile.constant(6.0), 0.0) == 4.0


def test_piecewise_detuning():
    profile = DetuningProfile.piecewise([0.0, 1.0, 2.0], [0.0, 1.0, 0.5])
    assert profile.knots == ((0.0, 0.0), (1.0, 1.0), (2.0, 0.5))
    assert detuning_value(profile, 0.5) == pytest.approx(0.5)
    assert detuning_value(profile, 1.5) == pytest.approx(0.75)
    assert detuning_value(profile, 5.0) == pytest.approx(0.5)
    assert profile.is_time_dependent
    assert not DetuningProfile.piecewise([0.0, 1.0], [0.3, 0.3]).is_time_dependent

    with pytest.raises(InvalidParameterError):
        DetuningProfile.piecewise([0.0, 1.0, 1.0], [0.0, 1.0, 2.0])
    with pytest.raises(InvalidParameterError):
        DetuningProfile.constant(0.0, bound=0.0)


def test_polarization_error_range():
    assert PolarizationError(0.3).epsilon == 0.3
    with pytest.raises(InvalidParameterError):
        PolarizationError(-0.1)
    with pytest.raises(InvalidParameterError):
        PolarizationError(1.5)


def test_coupling_factor():
    zero = DetuningProfile.constant(0.0)
    assert coupling_factor(0.0, 0.1, zero) == pytest.approx(1.1)
    assert coupling_factor(math.pi / 4.0, 0.0, zero) == pytest.approx(-1.0)

    shifted = DetuningProfile.constant(0.25)
    value = coupling_factor(0.3, PolarizationError(0.2), shifted)
    assert value == pytest.approx(math.cos(1.275) + 0.2)
    assert value == pytest.approx(0.49150, abs=1e-5)

    samples = coupling_factor(0.0, np.array([0.0, 0.1, 0.2]), zero)
    np.testing.assert_allclose(samples, [1.0, 1.1, 1.2])


def test_si_conversion():
    context = SiContext.from_atomic_mass(780.1e-9, 86.909)
    assert context.recoil_frequency == pytest.approx(2.371e4, rel=1e-3)
    assert SiContext.rubidium_87().recoil_frequency == pytest.approx(2.371e4, rel=1e-3)

    units = UnitSystem(context)
    seconds = si_convert(units, 7.87, Direction.TO_SI, Quantity.TIME)
    assert seconds == pytest.approx(332e-6, abs=2e-6)

    for quantity in Quantity:
        there = si_convert(units, 1.2345, Direction.TO_SI, quantity)
        back = si_convert(units, there, Direction.TO_NATURAL, quantity)
        assert back == pytest.approx(1.2345, rel=1e-12)


def test_si_conversion_needs_context():
    with pytest.raises(MissingSiContextError):
        si_convert(UnitSystem(), 1.0, Direction.TO_SI)
    with pytest.raises(InvalidParameterError):
        SiContext(wavelength=-1.0, mass=1.0)


def test_documents():
    pulse = PulseDocument(kind="gaussian", omega_r=2.0, tau=0.47).to_domain()
    assert pulse.amplitude == 2.0
    assert PulseDocument.from_domain(pulse).omega_r == 2.0

    with pytest.raises(ValueError):
        PulseDocument(kind="box", tau=1.0)

    sweep = DetuningDocument(kind="sweep_polarization").to_domain(pulse)
    assert detuning_value(sweep, 0.0) == pytest.approx(0.4)
    with pytest.raises(ValueError):
        DetuningDocument(kind="sweep_doppler").to_domain()

    piecewise = DetuningDocument(kind="piecewise", knots=[(0.0, 0.1), (1.0, 0.3)])
    assert piecewise.is_time_dependent
    assert detuning_value(piecewise.to_domain(), 0.5) == pytest.approx(0.2)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
