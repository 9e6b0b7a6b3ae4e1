"""
Result types shared by the propagators.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

# Outer-shell population above which truncation is flagged
LEAKAGE_FLAG_THRESHOLD = 1e-3


@dataclass
class Diagnostics:
    """Numerical health of one evolution"""
    norm_drift: float = 0.0
    step_count: int = 0
    leakage: float = 0.0
    flagged: bool = False
    messages: List[str] = field(default_factory=list)

    def flag(self, message: str) -> None:
        self.flagged = True
        self.messages.append(message)

    def to_dict(self) -> Dict[str, object]:
        return {
            "norm_drift": self.norm_drift,
            "step_count": self.step_count,
            "leakage": self.leakage,
            "flagged": self.flagged,
            "messages": list(self.messages),
        }


@dataclass
class Trajectory:
    """Bare-order populations sampled along the evolution"""
    times: np.ndarray
    orders: Tuple[int, ...]
    populations: np.ndarray  # (T, len(orders))
    norms: np.ndarray

    def population(self, order: int) -> np.ndarray:
        return self.populations[:, self.orders.index(order)]


@dataclass
class SampleEvolution:
    """Batched few-level evolution over (ε, p) samples"""
    amplitudes: np.ndarray          # (S, d)
    bare_populations: np.ndarray    # (S, 2 n_max + 1)
    orders: Tuple[int, ...]
    norm_drift: np.ndarray          # (S,)
    step_count: int
    trajectory_times: Optional[np.ndarray] = None
    trajectory_populations: Optional[np.ndarray] = None  # (T, S, 2 n_max + 1)

    def port(self, order: int) -> np.ndarray:
        return self.bare_populations[:, self.orders.index(order)]

    @property
    def outer_shell(self) -> np.ndarray:
        return self.bare_populations[:, 0] + self.bare_populations[:, -1]


@dataclass
class EvolutionResult:
    """Final state, bare-order populations and diagnostics of one evolution"""
    final_state: Union["FewLevelState", "MomentumWavepacket"]  # noqa: F821
    populations: Dict[int, float]
    diagnostics: Diagnostics
    trajectory: Optional[Trajectory] = None

    def population(self, order: int) -> float:
        return self.populations.get(order, 0.0)
