"""
Propagators

Adaptive few-level propagation (single family or batched over error samples),
the exact split-step solver on a periodic position grid, momentum-space
wavepackets with Brillouin-zone binning and family-by-family assembly, and the
trajectory / packet dumps.
"""

from .models import Diagnostics, EvolutionResult, SampleEvolution, Trajectory, LEAKAGE_FLAG_THRESHOLD
from .few_level import evolve_wavepacket_few_level, propagate_few_level, propagate_samples
from .split_step import SpatialGrid, initial_wavepacket, split_step_evolve
from .wavepacket import (
    MomentumWavepacket,
    assemble_wavepacket,
    bin_populations,
    family_samples,
    gaussian_wavepacket,
    zone_orders,
)
from .dumps import read_packet_json, write_packet_json, write_trajectory_csv

__all__ = [
    'Diagnostics',
    'EvolutionResult',
    'SampleEvolution',
    'Trajectory',
    'LEAKAGE_FLAG_THRESHOLD',
    'evolve_wavepacket_few_level',
    'propagate_few_level',
    'propagate_samples',
    'SpatialGrid',
    'initial_wavepacket',
    'split_step_evolve',
    'MomentumWavepacket',
    'assemble_wavepacket',
    'bin_populations',
    'family_samples',
    'gaussian_wavepacket',
    'zone_orders',
    'read_packet_json',
    'write_packet_json',
    'write_trajectory_csv',
]
