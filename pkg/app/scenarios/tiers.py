"""
Evaluation of one scenario on its model tier.
"""

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np

from app.control.campaigns import SamplingDocument
from app.control.cost import dbd_efficiency, sample_cost
from app.control.evaluation import ControlCandidate, candidate_cost
from app.control.sampling import SamplingSpec, sample_errors
from app.effective.models import EffectiveTlsModel, RwaModel
from app.effective.tls import differential_light_shift, rabi_population
from app.errors import IncompatibleTierError
from app.model.hamiltonian import FewLevelModel
from app.model.pulses import PulseEnvelope, PulseKind
from app.multilevel.basis import MomentumBasis
from app.multilevel.models import InteractionPictureModel
from app.propagation.few_level import evolve_wavepacket_few_level, propagate_few_level, propagate_samples
from app.propagation.models import EvolutionResult
from app.propagation.split_step import initial_wavepacket, split_step_evolve
from app.records import ScanRecord

from .config import ModelTier, ScenarioConfig, TierSpec

logger = logging.getLogger(__name__)

# Orders kept in exact-tier records
EXACT_ORDERS = tuple(range(-3, 4))


def tier_model(spec: TierSpec) -> FewLevelModel:
    if spec.tier is ModelTier.TLS:
        return EffectiveTlsModel()
    if spec.tier is ModelTier.RWA:
        return RwaModel()
    if spec.tier in (ModelTier.FIVE_LEVEL, ModelTier.N_LEVEL):
        return InteractionPictureModel(spec.n_max)
    raise IncompatibleTierError("the exact tier has no few-level model", {"tier": spec.label})


def _metrics(populations: Dict[int, float]) -> Dict[str, float]:
    plus = min(max(populations.get(1, 0.0), 0.0), 1.0)
    minus = min(max(populations.get(-1, 0.0), 0.0), 1.0)
    return {
        "dbd_efficiency": float(dbd_efficiency(plus, minus)),
        "oct_bs_efficiency": float(1.0 - sample_cost(plus, minus)),
    }


def _record(config: ScenarioConfig, populations: Dict[int, float], diagnostics: Dict[str, object],
            extra_metrics: Optional[Dict[str, float]] = None) -> ScanRecord:
    metrics = _metrics(populations)
    metrics["norm_drift"] = float(diagnostics.get("norm_drift", 0.0))
    metrics.update(extra_metrics or {})
    return ScanRecord(parameters=config.parameters(), populations=dict(sorted(populations.items())),
                      metrics=metrics, diagnostics=diagnostics)


def _two_level_populations(excited: float) -> Dict[int, float]:
    return {-1: excited / 2.0, 0: 1.0 - excited, 1: excited / 2.0}


def run_tier(config: ScenarioConfig) -> EvolutionResult:
    """Evolve the configured scenario and return the raw evolution result"""
    config.check_compatibility()
    spec = config.tier_spec
    pulse = config.pulse.to_domain()
    detuning = config.detuning.to_domain(pulse)
    if spec.tier is ModelTier.EXACT:
        packet = initial_wavepacket(config.momentum, config.sigma_p)
        return split_step_evolve(pulse, detuning, config.epsilon, packet, dt=config.dt)
    model = tier_model(spec)
    if config.wavepacket:
        return evolve_wavepacket_few_level(model, pulse, detuning, config.epsilon, config.momentum,
                                           config.sigma_p, tol=config.tol)
    basis = None if spec.is_two_level else MomentumBasis(config.momentum, spec.n_max)
    return propagate_few_level(model, pulse, detuning, config.epsilon, basis=basis, tol=config.tol)


def simulate(config: ScenarioConfig) -> ScanRecord:
    """
    Evaluate one scenario on its tier.

    RWA with a box pulse uses the closed Rabi formula; every other tier
    propagates. Sampling (when configured) adds the weighted OCT BS efficiency
    over the sampled errors.
    """
    config.check_compatibility()
    spec = config.tier_spec
    pulse = config.pulse.to_domain()
    extra = _sampled_metrics(config, pulse) if config.sampling is not None else None

    if spec.tier is ModelTier.RWA and pulse.kind is PulseKind.BOX:
        delta = config.detuning.to_domain(pulse).value_at(0.0)
        excited = rabi_population(pulse.amplitude, differential_light_shift(pulse.amplitude, delta), pulse.tau)
        return _record(config, _two_level_populations(float(excited)), {"closed_form": True}, extra)

    result = run_tier(config)
    populations = result.populations
    if spec.tier is ModelTier.EXACT:
        populations = {order: populations.get(order, 0.0) for order in EXACT_ORDERS}
    return _record(config, populations, result.diagnostics.to_dict(), extra)


def _sampled_metrics(config: ScenarioConfig, pulse: PulseEnvelope) -> Dict[str, float]:
    spec = config.tier_spec
    if spec.tier not in (ModelTier.FIVE_LEVEL, ModelTier.N_LEVEL):
        raise IncompatibleTierError("error sampling needs a multilevel tier", {"tier": spec.label})
    sampling: SamplingDocument = config.sampling
    samples = sample_errors(SamplingSpec(sampling.epsilon.to_domain(), sampling.momentum.to_domain(), config.seed))
    candidate = ControlCandidate(pulse, config.detuning.to_domain(pulse))
    cost = candidate_cost(candidate, samples, InteractionPictureModel(spec.n_max), tol=config.tol)
    return {"sampled_oct_bs_efficiency": 1.0 - cost}


def box_duration_scan(config: ScenarioConfig, taus: Sequence[float]) -> List[ScanRecord]:
    """
    Box-pulse duration scan from a single evolution.

    Populations freeze once a box pulse ends, so the state at time τ of one
    long pulse equals the final state of a pulse of duration τ.
    """
    config.check_compatibility()
    spec = config.tier_spec
    taus = np.asarray(taus, dtype=float)
    if config.pulse.kind != "box":
        raise IncompatibleTierError("duration trajectories need a box pulse", {"kind": config.pulse.kind})
    longest = float(taus.max())
    pulse = PulseEnvelope.box(config.pulse.omega, longest)
    detuning = config.detuning.to_domain(pulse)
    logger.info(f"Box duration scan on {spec.label}: {taus.size} durations up to {longest}")

    if spec.tier is ModelTier.RWA:
        delta = detuning.value_at(0.0)
        excited = rabi_population(pulse.amplitude, differential_light_shift(pulse.amplitude, delta), taus)
        series = [_two_level_populations(float(p)) for p in np.atleast_1d(excited)]
        diagnostics = [{"closed_form": True}] * taus.size
    elif spec.tier is ModelTier.EXACT:
        packet = initial_wavepacket(config.momentum, config.sigma_p)
        result = split_step_evolve(pulse, detuning, config.epsilon, packet, window=(0.0, longest),
                                   dt=config.dt, trajectory_times=taus)
        trajectory = result.trajectory
        series = []
        for tau in taus:
            row = trajectory.populations[int(np.argmin(np.abs(trajectory.times - tau)))]
            series.append({order: float(row[trajectory.orders.index(order)]) for order in EXACT_ORDERS})
        diagnostics = [result.diagnostics.to_dict()] * taus.size
    else:
        model = tier_model(spec)
        evolution = propagate_samples(model, pulse, detuning, [config.epsilon], [config.momentum],
                                      window=(0.0, longest), tol=config.tol, trajectory_times=taus)
        series = []
        for tau in taus:
            index = int(np.argmin(np.abs(evolution.trajectory_times - tau)))
            row = evolution.trajectory_populations[index, 0]
            series.append({order: float(value) for order, value in zip(evolution.orders, row)})
        diagnostics = [{"norm_drift": float(evolution.norm_drift[0])}] * taus.size

    records = []
    for tau, populations, diag in zip(taus, series, diagnostics):
        point = config.with_axes({"tau": float(tau)}) if tau > 0 else config
        record = _record(point, populations, diag)
        record.parameters["tau"] = float(tau)
        records.append(record)
    return records

