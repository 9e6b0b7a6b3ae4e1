"""
Scenario runner

Scenario configuration and model-tier selection, single evaluations and
grid scans, cross-tier validation and the preset figure reproductions.
"""

from .config import ModelTier, ScenarioConfig, TierSpec, load_config, parse_tier
from .tiers import box_duration_scan, run_tier, simulate
from .scan import grid_points, run_scan
from .validate import DeviationReport, validate
from .presets import FIGURES, PULSES, PRESET_VERSION, figure_preset
from .reproduce import Reproduction, reproduce

__all__ = [
    'ModelTier',
    'ScenarioConfig',
    'TierSpec',
    'load_config',
    'parse_tier',
    'box_duration_scan',
    'run_tier',
    'simulate',
    'grid_points',
    'run_scan',
    'DeviationReport',
    'validate',
    'FIGURES',
    'PULSES',
    'PRESET_VERSION',
    'figure_preset',
    'Reproduction',
    'reproduce',
]
