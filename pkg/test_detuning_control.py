#!/usr/bin/env python3
"""
Test suite for detuning control and pulse optimization
Double Bragg Diffraction Toolkit

Covers:
- Beam-splitter cost and efficiency metrics
- Error sampling (fixed, stratified uniform, Gauss-Hermite)
- Efficiency maps, first-cycle peaks and constant-detuning optima
- Optimization problems, campaigns and outcome files
"""

import logging
import os
import sys

import numpy as np
import pytest
from pydantic import ValidationError

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '.'))

from app.control import (
    AxisDistribution,
    CampaignDocument,
    ControlCandidate,
    DetuningMode,
    OptimizationOutcome,
    OptimizationProblem,
    PortPopulations,
    SamplingSpec,
    available_campaigns,
    bs_cost,
    candidate_cost,
    constant_detuning_optimum,
    dbd_efficiency,
    efficiency_map,
    first_cycle_peak,
    linear_sweep_polarization,
    oct_bs_efficiency,
    optimize,
    preset_campaign,
    read_outcome,
    sample_arrays,
    sample_cost,
    sample_errors,
    weighted_cost,
    write_outcome,
)
from app.errors import InvalidParameterError, InvalidPopulationError
from app.model import DetuningProfile, PulseEnvelope
from app.multilevel import InteractionPictureModel

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def _sweep_candidate(omega_r=2.0, tau=0.47):
    pulse = PulseEnvelope.gaussian(omega_r, tau)
    return ControlCandidate(pulse, linear_sweep_polarization(tau))


def test_sample_cost_values():
    assert sample_cost(0.5, 0.5) == pytest.approx(0.0)
    assert sample_cost(0.0, 0.0) == pytest.approx(1.0)
    assert sample_cost(1.0, 0.0) == pytest.approx(2.0)
    assert sample_cost(0.0, 1.0) == pytest.approx(2.0)
    np.testing.assert_allclose(sample_cost(np.array([0.5, 0.4]), np.array([0.5, 0.4])), [0.0, 0.2])


def test_sample_cost_range_and_symmetry():
    rng = np.random.default_rng(3)
    plus = rng.uniform(0.0, 0.5, 200)
    minus = rng.uniform(0.0, 0.5, 200)
    cost = sample_cost(plus, minus)
    assert np.all(cost >= 0.0) and np.all(cost <= 2.0)
    np.testing.assert_allclose(cost, sample_cost(minus, plus))


def test_invalid_populations_rejected():
    with pytest.raises(InvalidPopulationError):
        sample_cost(1.2, 0.0)
    with pytest.raises(InvalidPopulationError):
        sample_cost(0.6, 0.6)
    with pytest.raises(InvalidPopulationError):
        sample_cost(float("nan"), 0.1)
    with pytest.raises(InvalidPopulationError):
        bs_cost([])


def test_weighted_metrics():
    populations = [PortPopulations(0.5, 0.5, weight=3.0), PortPopulations(0.0, 0.0, weight=1.0)]
    assert bs_cost(populations) == pytest.approx(0.25)
    assert oct_bs_efficiency(populations) == pytest.approx(0.75)
    assert weighted_cost(np.array([0.5, 0.0]), np.array([0.5, 0.0]), np.array([1.0, 1.0])) == pytest.approx(0.5)
    assert dbd_efficiency(0.49, 0.5) == pytest.approx(0.99)


def test_axis_distributions():
    rng = np.random.default_rng(0)
    points, weights = AxisDistribution.uniform(0.0, 0.1, 2).nodes(rng)
    np.testing.assert_allclose(points, [0.025, 0.075])
    np.testing.assert_allclose(weights, [0.5, 0.5])

    points, weights = AxisDistribution.gaussian(0.1, 0.05, 8).nodes(rng)
    assert weights.sum() == pytest.approx(1.0)
    assert np.sum(weights * points) == pytest.approx(0.1)
    assert np.sum(weights * (points - 0.1) ** 2) == pytest.approx(0.05 ** 2)

    points, weights = AxisDistribution.fixed(0.2).nodes(rng)
    assert points.tolist() == [0.2] and weights.tolist() == [1.0]

    with pytest.raises(InvalidParameterError):
        AxisDistribution.uniform(0.1, 0.0, 4)
    with pytest.raises(InvalidParameterError):
        AxisDistribution.gaussian(0.0, 0.0)


def test_sample_errors_tensor_product():
    spec = SamplingSpec(AxisDistribution.uniform(0.0, 0.1, 2), AxisDistribution.gaussian(0.0, 0.05, 3))
    samples = sample_errors(spec)
    assert len(samples) == 6
    epsilons, momenta, weights = sample_arrays(samples)
    assert weights.sum() == pytest.approx(1.0)
    assert sorted(set(np.round(epsilons, 12))) == [0.025, 0.075]
    assert momenta[:3].tolist() == momenta[3:].tolist()


def test_random_sampling_is_seeded():
    spec = SamplingSpec(AxisDistribution.uniform(0.0, 0.1, 32), seed=5)
    first = sample_arrays(sample_errors(spec))[0]
    again = sample_arrays(sample_errors(spec))[0]
    other = sample_arrays(sample_errors(SamplingSpec(AxisDistribution.uniform(0.0, 0.1, 32), seed=6)))[0]
    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, other)
    assert np.all((first >= 0.0) & (first <= 0.1))


def test_efficiency_map_ordering():
    records = efficiency_map(_sweep_candidate(), [0.0, 0.1], [-0.1, 0.0, 0.1])
    assert [(r.parameters["epsilon"], r.parameters["p"]) for r in records] == [
        (0.0, -0.1), (0.0, 0.0), (0.0, 0.1), (0.1, -0.1), (0.1, 0.0), (0.1, 0.1)]
    for record in records:
        assert record.metrics["oct_bs_efficiency"] <= 1.0
        assert record.metrics["dbd_efficiency"] == pytest.approx(record.population(1) + record.population(-1))
    assert records[1].metrics["oct_bs_efficiency"] > 0.99


def test_efficiency_map_rejects_non_finite():
    with pytest.raises(ValueError):
        efficiency_map(_sweep_candidate(), [float("nan")], [0.0])


def test_candidate_cost_matches_map():
    candidate = _sweep_candidate()
    spec = SamplingSpec(AxisDistribution.fixed(0.05))
    cost = candidate_cost(candidate, sample_errors(spec))
    record = efficiency_map(candidate, [0.05], [0.0])[0]
    assert 1.0 - cost == pytest.approx(record.metrics["oct_bs_efficiency"], abs=1e-9)


def test_first_cycle_peak_at_optimal_detuning():
    best, best_tau = first_cycle_peak(2.0, lambda pulse: DetuningProfile.constant(0.25), [0.0], step=0.01)
    assert best[0] > 0.99
    assert 0.3 < best_tau[0] < 0.6


@pytest.mark.slow
def test_constant_detuning_optimum_grows_with_polarization_error():
    expected = {0.0: 0.25, 0.1: 0.55, 0.2: 0.80, 0.3: 1.10}
    deltas = np.round(np.arange(0.0, 1.5001, 0.01), 10)
    optimum, peak, table = constant_detuning_optimum(2.0, 0.47, list(expected), deltas)
    assert table.shape == (deltas.size, 4)
    for (eps, delta_opt), found in zip(expected.items(), optimum):
        assert found == pytest.approx(delta_opt, abs=0.05), f"epsilon={eps}"
    assert np.all(np.diff(optimum) > 0)


def test_problem_validation():
    spec = SamplingSpec()
    with pytest.raises(InvalidParameterError):
        OptimizationProblem(spec, budget=50)
    with pytest.raises(InvalidParameterError):
        OptimizationProblem(spec, free_scalars=("omega_r", "phase"))
    with pytest.raises(InvalidParameterError):
        OptimizationProblem(spec, initial=(9.0, 0.47, 2.0))
    with pytest.raises(InvalidParameterError):
        OptimizationProblem(spec, n_knots=1)

    problem = OptimizationProblem(spec, initial=(2.0, 0.47, 2.0), n_knots=8)
    assert problem.knot_times(2.0)[-1] == pytest.approx(4.0)
    assert not problem.accepts({"omega_r": 2.0, "tau": 0.6, "t0": 2.0})
    candidate = problem.candidate({"omega_r": 2.0, "tau": 0.47, "t0": 2.0}, np.full(8, 0.3))
    assert candidate.detuning.value_at(1.0) == pytest.approx(0.3)


@pytest.mark.slow
def test_degenerate_optimization():
    problem = OptimizationProblem(
        SamplingSpec(),
        initial=(2.0, 0.47, 0.0),
        omega_r_bounds=(1.5, 2.5),
        tau_bounds=(0.35, 0.6),
        t0_bounds=(0.0, 0.0),
        free_scalars=("omega_r", "tau"),
        detuning_mode=DetuningMode.SWEEP_POLARIZATION,
        budget=200,
        n_starts=1,
        name="degenerate",
    )
    outcome = optimize(problem, max_workers=1)
    assert outcome.efficiency >= 0.995
    assert outcome.evaluations <= problem.budget
    assert outcome.knot_values == []
    for name, value in outcome.scalars.items():
        low, high = problem.bounds[name]
        assert low <= value <= high

    fresh = candidate_cost(outcome.candidate(problem), sample_errors(problem.sampling),
                           InteractionPictureModel(problem.n_max), tol=problem.tol, norm_tolerance=1e-6)
    assert outcome.cost == pytest.approx(fresh, abs=1e-12)


def test_preset_campaigns_load():
    names = available_campaigns()
    for name in ("pol_oct", "doppler_oct", "combined", "sigma05"):
        assert name in names
    campaign = preset_campaign("pol_oct")
    assert campaign.initial == (1.617, 0.583, 2.859)
    problem = campaign.to_problem(seed=3)
    assert problem.seed == 3 and problem.sampling.seed == 3
    assert problem.detuning_mode is DetuningMode.KNOTS
    assert len(sample_errors(problem.sampling)) == 8


def test_campaign_document_validation():
    with pytest.raises(ValidationError):
        CampaignDocument(budget=10)
    with pytest.raises(ValidationError):
        CampaignDocument.model_validate({"free_scalars": ["omega_r", "phase"]})


def test_outcome_round_trip(tmp_path):
    outcome = OptimizationOutcome(
        scalars={"omega_r": 1.6, "tau": 0.58, "t0": 2.86},
        knot_times=[0.0, 5.72],
        knot_values=[0.1, 0.4],
        cost=0.002,
        efficiency=0.998,
        evaluations=120,
        budget_exhausted=True,
        trace=[{"start": 0, "evaluation": 1, "cost": 0.01}],
    )
    campaign = CampaignDocument(name="roundtrip", n_knots=2)
    path = write_outcome(tmp_path / "outcome.json", outcome, campaign)
    loaded, loaded_campaign = read_outcome(path)
    assert loaded.to_dict() == outcome.to_dict()
    assert loaded_campaign.name == "roundtrip"

    candidate = loaded.candidate(loaded_campaign.to_problem())
    assert candidate.detuning.value_at(2.86) == pytest.approx(0.25)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
