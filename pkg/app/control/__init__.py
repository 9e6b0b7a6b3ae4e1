"""
Detuning control

Linear detuning sweeps, error sampling over polarization errors and family
momenta, the beam-splitter cost with its efficiency metrics, candidate
evaluation and efficiency maps, and the seeded multi-start optimizer with its
campaign files.
"""

from .sweeps import linear_sweep_doppler, linear_sweep_polarization
from .sampling import AxisDistribution, DistributionKind, ErrorSample, SamplingSpec, sample_arrays, sample_errors
from .cost import (
    PortPopulations,
    bs_cost,
    dbd_efficiency,
    oct_bs_efficiency,
    sample_cost,
    weighted_cost,
)
from .evaluation import (
    ControlCandidate,
    candidate_cost,
    constant_detuning_optimum,
    efficiency_map,
    evaluate_ports,
    first_cycle_peak,
)
from .optimizer import DetuningMode, OptimizationOutcome, OptimizationProblem, optimize
from .campaigns import (
    CampaignDocument,
    available_campaigns,
    load_campaign,
    preset_campaign,
    read_outcome,
    write_outcome,
)

__all__ = [
    'linear_sweep_doppler',
    'linear_sweep_polarization',
    'AxisDistribution',
    'DistributionKind',
    'ErrorSample',
    'SamplingSpec',
    'sample_arrays',
    'sample_errors',
    'PortPopulations',
    'bs_cost',
    'dbd_efficiency',
    'oct_bs_efficiency',
    'sample_cost',
    'weighted_cost',
    'ControlCandidate',
    'candidate_cost',
    'constant_detuning_optimum',
    'efficiency_map',
    'evaluate_ports',
    'first_cycle_peak',
    'DetuningMode',
    'OptimizationOutcome',
    'OptimizationProblem',
    'optimize',
    'CampaignDocument',
    'available_campaigns',
    'load_campaign',
    'preset_campaign',
    'read_outcome',
    'write_outcome',
]
