#!/usr/bin/env python3
"""
Test suite for the propagators
Double Bragg Diffraction Toolkit

Covers:
- Batched few-level propagation, diagnostics and trajectories
- Wavepacket assembly from momentum families
- Split-step grid sizing, zone binning and convergence
- Agreement of the five-level and exact tiers
- Trajectory and wavepacket dumps
"""

import csv
import logging
import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '.'))

from app.effective import EffectiveTlsModel
from app.errors import GridTooCoarseError, InconsistentBasisError
from app.model import DetuningProfile, PulseEnvelope
from app.multilevel import InteractionPictureModel
from app.propagation import (
    LEAKAGE_FLAG_THRESHOLD,
    SpatialGrid,
    assemble_wavepacket,
    bin_populations,
    evolve_wavepacket_few_level,
    family_samples,
    gaussian_wavepacket,
    initial_wavepacket,
    propagate_few_level,
    propagate_samples,
    read_packet_json,
    split_step_evolve,
    write_packet_json,
    write_trajectory_csv,
    zone_orders,
)

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

PULSE = PulseEnvelope.gaussian(2.0, 0.47)
RESONANT = DetuningProfile.constant(0.25)


def test_batched_samples_match_single_runs():
    model = InteractionPictureModel(2)
    epsilons = np.array([0.0, 0.1, 0.2])
    momenta = np.array([0.0, 0.05, -0.1])
    batch = propagate_samples(model, PULSE, RESONANT, epsilons, momenta)
    assert batch.bare_populations.shape == (3, 5)
    np.testing.assert_allclose(batch.bare_populations.sum(axis=1), 1.0, atol=1e-8)
    assert np.all(batch.norm_drift < 1e-8)

    single = propagate_samples(model, PULSE, RESONANT, [0.1], [0.05])
    assert single.port(1)[0] == pytest.approx(batch.port(1)[1], abs=1e-7)
    assert single.port(-1)[0] == pytest.approx(batch.port(-1)[1], abs=1e-7)


def test_sample_lengths_must_match():
    with pytest.raises(InconsistentBasisError):
        propagate_samples(InteractionPictureModel(2), PULSE, RESONANT, [0.0, 0.1], [0.0])


def test_trajectory_recording():
    times = np.linspace(-2.35, 2.35, 11)
    result = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT, trajectory_times=times)
    trajectory = result.trajectory
    assert trajectory is not None
    np.testing.assert_allclose(trajectory.times, times)
    assert trajectory.population(0)[0] == pytest.approx(1.0)
    assert trajectory.population(1)[-1] == pytest.approx(result.population(1), abs=1e-10)
    np.testing.assert_allclose(trajectory.norms, 1.0, atol=1e-8)


def test_truncation_leakage_is_flagged():
    strong = PulseEnvelope.gaussian(8.0, 1.0)
    result = propagate_few_level(InteractionPictureModel(2), strong, DetuningProfile.constant(0.0))
    assert result.diagnostics.leakage > LEAKAGE_FLAG_THRESHOLD
    assert result.diagnostics.flagged
    assert result.diagnostics.to_dict()["messages"]


def test_grid_sizes():
    assert SpatialGrid.for_width(0.1).points == 2048
    assert SpatialGrid.for_width(0.05).points == 4096
    assert SpatialGrid.for_width(0.01).points == 32768
    grid = SpatialGrid.for_width(0.1)
    assert grid.p_max >= 10.9
    assert grid.dp <= 0.1 / 8
    assert grid.momenta[grid.points // 2] == 0.0

    with pytest.raises(GridTooCoarseError):
        SpatialGrid(points=256, periods=160).check_resolution(0.1)
    with pytest.raises(GridTooCoarseError):
        SpatialGrid(points=2048, periods=80).check_resolution(0.1)
    with pytest.raises(InconsistentBasisError):
        SpatialGrid(points=2047, periods=160)


def test_zone_binning():
    np.testing.assert_array_equal(zone_orders(np.array([-1.0, -0.99, 0.0, 1.0, 1.01, 3.0])), [-1, 0, 0, 0, 1, 1])

    packet = initial_wavepacket(0.0, 0.01)
    populations = bin_populations(packet)
    assert populations[0] == pytest.approx(1.0, abs=1e-10)
    assert all(value < 1e-10 for order, value in populations.items() if order != 0)


def test_wavepacket_assembly():
    momenta, weights, spacing = family_samples(0.0, 0.1)
    assert float(2.0 / spacing).is_integer()
    amplitudes = np.zeros((momenta.size, 5), dtype=complex)
    amplitudes[:, 3] = 1.0
    packet = assemble_wavepacket(momenta, amplitudes, weights, spacing)
    assert packet.norm == pytest.approx(1.0, abs=1e-9)
    assert packet.mean_momentum == pytest.approx(2.0, abs=1e-6)
    assert bin_populations(packet)[1] == pytest.approx(1.0, abs=1e-9)

    with pytest.raises(InconsistentBasisError):
        assemble_wavepacket(momenta, amplitudes[:-1], weights, spacing)


def test_few_level_wavepacket_evolution():
    result = evolve_wavepacket_few_level(InteractionPictureModel(2), PULSE, RESONANT, 0.0, p0=0.0, sigma_p=0.05)
    total = sum(result.populations.values())
    assert total == pytest.approx(1.0, abs=1e-6)
    assert result.population(1) + result.population(-1) > 0.9

    with pytest.raises(InconsistentBasisError):
        evolve_wavepacket_few_level(EffectiveTlsModel(), PULSE, RESONANT, 0.0, p0=0.0, sigma_p=0.05)


def test_split_step_conserves_norm():
    result = split_step_evolve(PULSE, RESONANT, 0.1, initial_wavepacket(0.0, 0.1))
    assert result.diagnostics.norm_drift < 1e-8
    assert sum(result.populations.values()) == pytest.approx(1.0, abs=1e-8)
    assert result.population(1) == pytest.approx(result.population(-1), abs=1e-6)


def test_split_step_trajectory_on_lattice():
    box = PulseEnvelope.box(2.0, 1.0)
    initial = initial_wavepacket(0.0, 0.1)
    result = split_step_evolve(box, DetuningProfile.constant(0.0), 0.0, initial, dt=0.01,
                               trajectory_times=[0.0, 0.5, 1.0])
    np.testing.assert_allclose(result.trajectory.times, [0.0, 0.5, 1.0])
    assert result.trajectory.population(0)[0] == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(InconsistentBasisError):
        split_step_evolve(box, DetuningProfile.constant(0.0), 0.0, initial, dt=0.01, trajectory_times=[0.123])


def test_split_step_second_order():
    initial = initial_wavepacket(0.0, 0.1)
    ports = [split_step_evolve(PULSE, RESONANT, 0.1, initial, dt=dt).population(1) for dt in (0.02, 0.01, 0.005)]
    ratio = abs(ports[0] - ports[1]) / abs(ports[1] - ports[2])
    assert 3.5 <= ratio <= 4.5


@pytest.mark.slow
def test_five_level_tracks_exact_solver():
    exact = split_step_evolve(PULSE, RESONANT, 0.0, initial_wavepacket(0.0, 0.01))
    five = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT, 0.0)
    for order in (-1, 0, 1):
        assert five.population(order) == pytest.approx(exact.population(order), abs=5e-3)


def test_packet_dump_round_trip(tmp_path):
    grid = SpatialGrid(points=64, periods=4)
    packet = gaussian_wavepacket(0.1, 0.2, grid.momenta, grid.dp)
    path = write_packet_json(tmp_path / "packet.json", packet)
    loaded = read_packet_json(path)
    np.testing.assert_allclose(loaded.grid, packet.grid)
    np.testing.assert_allclose(loaded.amplitudes, packet.amplitudes)
    assert loaded.spacing == pytest.approx(packet.spacing)
    assert loaded.sigma_p == 0.2


def test_trajectory_csv(tmp_path):
    times = np.linspace(-2.35, 2.35, 5)
    result = propagate_few_level(InteractionPictureModel(2), PULSE, RESONANT, trajectory_times=times)
    path = write_trajectory_csv(tmp_path / "trajectory.csv", result.trajectory)
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0][0] == "t"
    assert rows[0][-1] == "norm"
    assert len(rows) == 6


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
