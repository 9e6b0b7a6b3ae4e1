"""
Scenario configuration and model-tier selection.
"""

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from app.config import get_settings
from app.control.campaigns import SamplingDocument
from app.errors import ConfigurationError, IncompatibleTierError
from app.model.documents import DetuningDocument, PulseDocument

logger = logging.getLogger(__name__)

# Axis names accepted by scans, mapped onto configuration fields
SCAN_AXES = ("omega", "tau", "t0", "delta", "epsilon", "p", "sigma_p")
DEFAULT_N_LEVEL = 4


class ModelTier(str, Enum):
    TLS = "tls"
    RWA = "rwa"
    FIVE_LEVEL = "five_level"
    N_LEVEL = "n_level"
    EXACT = "exact"


@dataclass(frozen=True)
class TierSpec:
    tier: ModelTier
    n_max: int = 2

    @property
    def label(self) -> str:
        return f"n_level({self.n_max})" if self.tier is ModelTier.N_LEVEL else self.tier.value

    @property
    def is_two_level(self) -> bool:
        return self.tier in (ModelTier.TLS, ModelTier.RWA)


_N_LEVEL = re.compile(r"^n_level(?:[(:](\d+)\)?)?$")


def parse_tier(name: str) -> TierSpec:
    """Parse tls | rwa | five_level | n_level(n) | n_level:n | exact"""
    text = name.strip().lower()
    match = _N_LEVEL.match(text)
    if match:
        n_max = int(match.group(1)) if match.group(1) else DEFAULT_N_LEVEL
        if n_max < 1:
            raise ConfigurationError("n_level tier needs n ≥ 1", {"tier": name})
        return TierSpec(ModelTier.N_LEVEL, n_max)
    try:
        tier = ModelTier(text)
    except ValueError:
        raise ConfigurationError(f"unknown model tier {name!r}",
                                 {"tier": name, "known": [t.value for t in ModelTier]})
    return TierSpec(tier, 2 if tier is not ModelTier.TLS and tier is not ModelTier.RWA else 1)


class ScenarioConfig(BaseModel):
    """One simulation: tier, pulse, detuning, errors, outputs and seed"""
    model_config = ConfigDict(extra="forbid")

    scenario_id: str = "custom"
    tier: str = "five_level"
    pulse: PulseDocument = Field(default_factory=lambda: PulseDocument(kind="gaussian", omega_r=2.0, tau=0.47))
    detuning: DetuningDocument = Field(default_factory=DetuningDocument)
    epsilon: float = Field(default=0.0, ge=0.0, le=1.0)
    momentum: float = Field(default=0.0, ge=-1.0, lt=1.0)
    sigma_p: float = Field(default=0.01, gt=0.0)
    wavepacket: bool = False
    sampling: Optional[SamplingDocument] = None
    axes: Dict[str, List[float]] = Field(default_factory=dict)
    output_dir: Optional[str] = None
    seed: int = Field(default_factory=lambda: get_settings().seed)
    dt: Optional[float] = Field(default=None, gt=0.0)
    tol: Optional[float] = Field(default=None, gt=0.0)

    @property
    def tier_spec(self) -> TierSpec:
        return parse_tier(self.tier)

    def check_compatibility(self) -> None:
        """Raise IncompatibleTierError when the tier cannot represent the scenario"""
        spec = self.tier_spec
        if spec.is_two_level and self.detuning.is_time_dependent:
            raise IncompatibleTierError(
                f"tier {spec.label} needs constant detuning; use five_level for sweeps",
                {"tier": spec.label, "detuning": self.detuning.kind},
            )
        if spec.is_two_level and self.momentum != 0.0:
            raise IncompatibleTierError(f"tier {spec.label} describes p = 0 only",
                                        {"tier": spec.label, "momentum": self.momentum})
        if self.wavepacket and spec.tier not in (ModelTier.FIVE_LEVEL, ModelTier.N_LEVEL):
            raise IncompatibleTierError("wavepacket assembly needs a multilevel tier", {"tier": spec.label})

    def with_axes(self, point: Dict[str, float]) -> "ScenarioConfig":
        """Copy with scan-axis values applied"""
        data = self.model_dump()
        pulse, detuning = data["pulse"], data["detuning"]
        for name, value in point.items():
            value = float(value)
            if name == "omega":
                pulse["omega" if pulse["kind"] == "box" else "omega_r"] = value
            elif name in ("tau", "t0"):
                pulse[name] = value
            elif name == "delta":
                if detuning["kind"] != "constant":
                    raise ConfigurationError("delta axis needs a constant detuning", {"kind": detuning["kind"]})
                detuning["delta"] = value
            elif name == "p":
                data["momentum"] = value
            elif name in ("epsilon", "sigma_p"):
                data[name] = value
            else:
                raise ConfigurationError(f"unknown scan axis {name!r}", {"known": list(SCAN_AXES)})
        return ScenarioConfig.model_validate(data)

    def parameters(self) -> Dict[str, float]:
        """Named scalar inputs recorded with every result"""
        amplitude = self.pulse.omega if self.pulse.kind == "box" else self.pulse.omega_r
        values = {"omega": amplitude, "tau": self.pulse.tau, "t0": self.pulse.t0}
        if self.detuning.kind == "constant":
            values["delta"] = self.detuning.delta
        values.update({"epsilon": self.epsilon, "p": self.momentum})
        if self.tier_spec.tier is ModelTier.EXACT or self.wavepacket:
            values["sigma_p"] = self.sigma_p
        return {k: float(v) for k, v in values.items()}


def validate_axes(axes: Dict[str, List[float]]) -> None:
    for name, values in axes.items():
        if name not in SCAN_AXES:
            raise ConfigurationError(f"unknown scan axis {name!r}", {"known": list(SCAN_AXES)})
        if not values or not all(math.isfinite(float(v)) for v in values):
            raise ConfigurationError(f"scan axis {name!r} needs finite values")


def load_config(path: Union[str, Path]) -> ScenarioConfig:
    return ScenarioConfig.model_validate_json(Path(path).read_text(encoding="utf-8"))
