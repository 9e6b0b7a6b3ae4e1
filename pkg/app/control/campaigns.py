"""
Campaign definition files and optimization outcome files (JSON).
"""

import json
import logging
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from app.config import get_settings

from .optimizer import DetuningMode, OptimizationOutcome, OptimizationProblem, SCALAR_NAMES
from .sampling import AxisDistribution, DistributionKind, SamplingSpec

logger = logging.getLogger(__name__)

CAMPAIGN_DIR = Path(__file__).resolve().parent.parent.parent / "campaigns"

PathLike = Union[str, Path]


class AxisDocument(BaseModel):
    kind: Literal["fixed", "uniform", "gaussian"] = "fixed"
    value: float = 0.0
    low: float = 0.0
    high: float = 0.0
    mean: float = 0.0
    sigma: float = 0.0
    count: int = Field(default=1, ge=1)

    def to_domain(self) -> AxisDistribution:
        return AxisDistribution(DistributionKind(self.kind), value=self.value, low=self.low, high=self.high,
                                mean=self.mean, sigma=self.sigma, count=self.count)


class SamplingDocument(BaseModel):
    epsilon: AxisDocument = Field(default_factory=AxisDocument)
    momentum: AxisDocument = Field(default_factory=AxisDocument)


class CampaignDocument(BaseModel):
    """JSON campaign: bounds, sampling, budget and seed"""
    name: str = "campaign"
    sampling: SamplingDocument = Field(default_factory=SamplingDocument)
    initial: Tuple[float, float, float] = (2.0, 0.47, 2.0)
    omega_r_bounds: Tuple[float, float] = (0.5, 4.0)
    tau_bounds: Tuple[float, float] = (0.2, 1.5)
    t0_bounds: Tuple[float, float] = (0.5, 8.0)
    free_scalars: List[Literal["omega_r", "tau", "t0"]] = Field(default_factory=lambda: list(SCALAR_NAMES))
    detuning_mode: Literal["knots", "sweep_polarization", "sweep_doppler", "zero"] = "knots"
    n_knots: int = Field(default_factory=lambda: get_settings().n_knots, ge=2)
    detuning_bound: float = Field(default_factory=lambda: get_settings().detuning_bound, gt=0)
    n_max: int = Field(default=2, ge=1)
    budget: int = Field(default=2000, ge=100)
    n_starts: int = Field(default=4, ge=1)
    seed: int = 0
    tol: float = Field(default=1e-9, gt=0)

    def to_problem(self, seed: Optional[int] = None) -> OptimizationProblem:
        return OptimizationProblem(
            sampling=SamplingSpec(self.sampling.epsilon.to_domain(), self.sampling.momentum.to_domain(),
                                  seed=self.seed if seed is None else seed),
            initial=tuple(self.initial),
            omega_r_bounds=tuple(self.omega_r_bounds),
            tau_bounds=tuple(self.tau_bounds),
            t0_bounds=tuple(self.t0_bounds),
            free_scalars=tuple(self.free_scalars),
            detuning_mode=DetuningMode(self.detuning_mode),
            n_knots=self.n_knots,
            detuning_bound=self.detuning_bound,
            n_max=self.n_max,
            budget=self.budget,
            n_starts=self.n_starts,
            seed=self.seed if seed is None else seed,
            tol=self.tol,
            name=self.name,
        )


def load_campaign(path: PathLike) -> CampaignDocument:
    return CampaignDocument.model_validate_json(Path(path).read_text(encoding="utf-8"))


def preset_campaign(name: str) -> CampaignDocument:
    """Campaign shipped under campaigns/<name>.json"""
    return load_campaign(CAMPAIGN_DIR / f"{name}.json")


def available_campaigns() -> List[str]:
    return sorted(path.stem for path in CAMPAIGN_DIR.glob("*.json"))


def write_outcome(path: PathLike, outcome: OptimizationOutcome, campaign: Optional[CampaignDocument] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = outcome.to_dict()
    if campaign is not None:
        payload["campaign"] = campaign.model_dump()
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def read_outcome(path: PathLike) -> Tuple[OptimizationOutcome, Optional[CampaignDocument]]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    knots = payload.get("knots", [])
    outcome = OptimizationOutcome(
        scalars={k: float(v) for k, v in payload["scalars"].items()},
        knot_times=[float(t) for t, _ in knots],
        knot_values=[float(v) for _, v in knots],
        cost=float(payload["cost"]),
        efficiency=float(payload["efficiency"]),
        evaluations=int(payload.get("evaluations", 0)),
        budget_exhausted=bool(payload.get("budget_exhausted", False)),
        trace=list(payload.get("trace", [])),
    )
    campaign = CampaignDocument.model_validate(payload["campaign"]) if "campaign" in payload else None
    return outcome, campaign
