"""
Cross-tier validation: run two model tiers on identical inputs and compare.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from app.records import ScanRecord, order_label

from .config import ScenarioConfig
from .scan import run_scan

logger = logging.getLogger(__name__)

# Ports compared by default: |p - 2⟩, |p⟩, |p + 2⟩
PORTS = (-1, 0, 1)


@dataclass
class DeviationReport:
    """Absolute population deviations per port between two tiers"""
    tier_a: str
    tier_b: str
    points: int
    max_deviation: Dict[int, float]
    mean_deviation: Dict[int, float]
    records_a: List[ScanRecord] = field(default_factory=list, repr=False)
    records_b: List[ScanRecord] = field(default_factory=list, repr=False)

    @property
    def worst(self) -> float:
        return max(self.max_deviation.values()) if self.max_deviation else 0.0

    @property
    def mean(self) -> float:
        return float(np.mean(list(self.mean_deviation.values()))) if self.mean_deviation else 0.0

    def to_dict(self) -> Dict[str, object]:
        return {
            "tier_a": self.tier_a,
            "tier_b": self.tier_b,
            "points": self.points,
            "max_deviation": {order_label(k): v for k, v in self.max_deviation.items()},
            "mean_deviation": {order_label(k): v for k, v in self.mean_deviation.items()},
            "worst": self.worst,
        }


def compare_records(records_a: List[ScanRecord], records_b: List[ScanRecord],
                    ports=PORTS) -> Dict[int, np.ndarray]:
    """Absolute deviations per port, point by point"""
    if len(records_a) != len(records_b):
        raise ValueError("record lists differ in length")
    return {
        order: np.array([abs(a.population(order) - b.population(order)) for a, b in zip(records_a, records_b)])
        for order in ports
    }


def validate(tier_a: str, tier_b: str, scenario: ScenarioConfig,
             max_workers: Optional[int] = None) -> DeviationReport:
    """
    Run ``scenario`` on two tiers and report per-port deviations.

    The scenario's scan axes (if any) are evaluated on both tiers; without
    axes a single point is compared. IncompatibleTierError propagates when
    either tier cannot represent the scenario.
    """
    config_a = scenario.model_copy(update={"tier": tier_a})
    config_b = scenario.model_copy(update={"tier": tier_b})
    config_a.check_compatibility()
    config_b.check_compatibility()

    records_a = run_scan(config_a, max_workers=max_workers)
    records_b = run_scan(config_b, max_workers=max_workers)
    deviations = compare_records(records_a, records_b)
    report = DeviationReport(
        tier_a=config_a.tier_spec.label,
        tier_b=config_b.tier_spec.label,
        points=len(records_a),
        max_deviation={order: float(values.max()) for order, values in deviations.items()},
        mean_deviation={order: float(values.mean()) for order, values in deviations.items()},
        records_a=records_a,
        records_b=records_b,
    )
    logger.info(f"Validate {report.tier_a} vs {report.tier_b} over {report.points} points: "
                f"max deviation {report.worst:.3e}")
    return report
