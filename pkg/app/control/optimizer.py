"""
Seeded multi-start search for robust beam-splitter controls.

Variables: Gaussian amplitude Ω_R, width τ, centre t0 and (in knot mode) the
values of a piecewise-linear detuning on knots spread uniformly over the
window [0, 2 t0]. Each start alternates Nelder-Mead on the free scalars with
bounded quasi-Newton descent (central finite differences) on the knots.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from app.config import get_settings
from app.errors import InvalidParameterError
from app.model.detuning import DEFAULT_DETUNING_BOUND, DetuningProfile
from app.model.pulses import PulseEnvelope
from app.multilevel.models import InteractionPictureModel

from .evaluation import ControlCandidate, candidate_cost
from .sampling import ErrorSample, SamplingSpec, sample_errors
from .sweeps import linear_sweep_doppler, linear_sweep_polarization

logger = logging.getLogger(__name__)

SCALAR_NAMES = ("omega_r", "tau", "t0")
MIN_BUDGET = 100
# Cost returned for rejected candidates (above the largest attainable cost of 2)
REJECTED_COST = 4.0
# Knot-mode windows must hold the pulse: t0 ≥ this many τ
WINDOW_WIDTHS = 4.0
MAX_ROUNDS = 20
KNOT_ITERATIONS = 5
IMPROVEMENT_THRESHOLD = 1e-7
FINITE_DIFFERENCE_STEP = 1e-4


class DetuningMode(str, Enum):
    KNOTS = "knots"
    SWEEP_POLARIZATION = "sweep_polarization"
    SWEEP_DOPPLER = "sweep_doppler"
    ZERO = "zero"


@dataclass(frozen=True)
class OptimizationProblem:
    """Search space, error model and budget of one campaign"""
    sampling: SamplingSpec
    initial: Tuple[float, float, float] = (2.0, 0.47, 2.0)
    omega_r_bounds: Tuple[float, float] = (0.5, 4.0)
    tau_bounds: Tuple[float, float] = (0.2, 1.5)
    t0_bounds: Tuple[float, float] = (0.5, 8.0)
    free_scalars: Tuple[str, ...] = SCALAR_NAMES
    detuning_mode: DetuningMode = DetuningMode.KNOTS
    n_knots: int = 32
    detuning_bound: float = DEFAULT_DETUNING_BOUND
    n_max: int = 2
    budget: int = 2000
    n_starts: int = 4
    seed: int = 0
    tol: float = 1e-9
    name: str = "campaign"

    def __post_init__(self):
        if self.budget < MIN_BUDGET:
            raise InvalidParameterError(f"optimization budget must be at least {MIN_BUDGET}",
                                        {"budget": self.budget})
        unknown = set(self.free_scalars) - set(SCALAR_NAMES)
        if unknown:
            raise InvalidParameterError("unknown optimization variables", {"unknown": sorted(unknown)})
        if self.n_starts < 1 or self.n_knots < 2:
            raise InvalidParameterError("need at least one start and two knots",
                                        {"n_starts": self.n_starts, "n_knots": self.n_knots})
        for name, (low, high) in self.bounds.items():
            if not low <= high:
                raise InvalidParameterError(f"bounds of {name} are reversed", {"low": low, "high": high})
        if not self.accepts(dict(zip(SCALAR_NAMES, self.initial))):
            raise InvalidParameterError("initial point violates the bounds", {"initial": list(self.initial)})

    @property
    def bounds(self) -> Dict[str, Tuple[float, float]]:
        return {"omega_r": self.omega_r_bounds, "tau": self.tau_bounds, "t0": self.t0_bounds}

    @property
    def uses_knots(self) -> bool:
        return self.detuning_mode is DetuningMode.KNOTS

    def accepts(self, scalars: Dict[str, float]) -> bool:
        for name, value in scalars.items():
            low, high = self.bounds[name]
            if not (low <= value <= high) or not math.isfinite(value):
                return False
        if self.uses_knots and scalars["t0"] < WINDOW_WIDTHS * scalars["tau"]:
            return False
        return True

    def knot_times(self, t0: float) -> np.ndarray:
        return np.linspace(0.0, 2.0 * t0, self.n_knots)

    def candidate(self, scalars: Dict[str, float], knots: Optional[np.ndarray] = None) -> ControlCandidate:
        pulse = PulseEnvelope.gaussian(scalars["omega_r"], scalars["tau"], scalars["t0"])
        if self.detuning_mode is DetuningMode.KNOTS:
            detuning = DetuningProfile.piecewise(self.knot_times(scalars["t0"]), knots, self.detuning_bound)
        elif self.detuning_mode is DetuningMode.SWEEP_POLARIZATION:
            detuning = linear_sweep_polarization(pulse.tau, pulse.t0, self.detuning_bound)
        elif self.detuning_mode is DetuningMode.SWEEP_DOPPLER:
            detuning = linear_sweep_doppler(pulse.tau, self.detuning_bound)
        else:
            detuning = DetuningProfile.constant(0.0, self.detuning_bound)
        return ControlCandidate(pulse, detuning)


@dataclass
class OptimizationOutcome:
    """Best candidate of a campaign"""
    scalars: Dict[str, float]
    knot_times: List[float]
    knot_values: List[float]
    cost: float
    efficiency: float
    evaluations: int
    budget_exhausted: bool
    trace: List[Dict[str, float]] = field(default_factory=list)

    def candidate(self, problem: OptimizationProblem) -> ControlCandidate:
        knots = np.asarray(self.knot_values) if self.knot_values else None
        return problem.candidate(self.scalars, knots)

    def to_dict(self) -> Dict[str, object]:
        return {
            "scalars": dict(self.scalars),
            "knots": [[t, v] for t, v in zip(self.knot_times, self.knot_values)],
            "cost": self.cost,
            "efficiency": self.efficiency,
            "evaluations": self.evaluations,
            "budget_exhausted": self.budget_exhausted,
            "trace": list(self.trace),
        }


class _BudgetReached(Exception):
    pass


class _Objective:
    """Counts evaluations and keeps the best candidate of one start"""

    def __init__(self, problem: OptimizationProblem, samples: List[ErrorSample], budget: int, start: int):
        self.problem = problem
        self.samples = samples
        self.budget = budget
        self.start = start
        self.model = InteractionPictureModel(problem.n_max)
        self.count = 0
        self.best_cost = math.inf
        self.best_scalars: Optional[Dict[str, float]] = None
        self.best_knots: Optional[np.ndarray] = None
        self.trace: List[Dict[str, float]] = []

    def __call__(self, scalars: Dict[str, float], knots: Optional[np.ndarray]) -> float:
        if not self.problem.accepts(scalars):
            return REJECTED_COST
        if self.count >= self.budget:
            raise _BudgetReached()
        if knots is not None:
            knots = np.clip(knots, -self.problem.detuning_bound, self.problem.detuning_bound)
        self.count += 1
        cost = candidate_cost(self.problem.candidate(scalars, knots), self.samples, self.model,
                              tol=self.problem.tol, norm_tolerance=1e-6)
        self.trace.append({"start": self.start, "evaluation": self.count, "cost": cost})
        if cost < self.best_cost:
            self.best_cost = cost
            self.best_scalars = dict(scalars)
            self.best_knots = None if knots is None else knots.copy()
            logger.debug(f"start {self.start} eval {self.count}: cost {cost:.6e}")
        return cost


def _initial_point(problem: OptimizationProblem, start: int, rng: np.random.Generator):
    scalars = dict(zip(SCALAR_NAMES, problem.initial))
    if start > 0:
        for _ in range(100):
            trial = dict(scalars)
            for name in problem.free_scalars:
                low, high = problem.bounds[name]
                trial[name] = float(rng.uniform(low, high))
            if problem.accepts(trial):
                scalars = trial
                break
    knots = None
    if problem.uses_knots:
        sweep = linear_sweep_polarization(scalars["tau"], scalars["t0"], problem.detuning_bound)
        knots = np.asarray(sweep.value_at(problem.knot_times(scalars["t0"])), dtype=float)
        if start > 0:
            knots = np.clip(knots + rng.normal(0.0, 0.25, knots.size),
                            -problem.detuning_bound, problem.detuning_bound)
    return scalars, knots


def _run_start(problem: OptimizationProblem, start: int, seed: np.random.SeedSequence, budget: int) -> dict:
    rng = np.random.default_rng(seed)
    samples = sample_errors(problem.sampling)
    objective = _Objective(problem, samples, budget, start)
    scalars, knots = _initial_point(problem, start, rng)
    free = list(problem.free_scalars)
    exhausted = False
    try:
        objective(scalars, knots)
        previous = objective.best_cost
        for _ in range(MAX_ROUNDS):
            if free:
                fixed_knots = objective.best_knots

                def scalar_cost(x):
                    trial = dict(scalars)
                    trial.update(zip(free, map(float, x)))
                    return objective(trial, fixed_knots)

                x0 = [objective.best_scalars[name] for name in free]
                minimize(scalar_cost, x0, method="Nelder-Mead",
                         bounds=[problem.bounds[name] for name in free],
                         options={"maxfev": 30 * len(free), "xatol": 1e-4, "fatol": 1e-8})
            if problem.uses_knots:
                fixed_scalars = dict(objective.best_scalars)

                def knot_cost(values):
                    return objective(fixed_scalars, np.asarray(values))

                bound = problem.detuning_bound
                minimize(knot_cost, objective.best_knots, method="L-BFGS-B", jac="3-point",
                         bounds=[(-bound, bound)] * problem.n_knots,
                         options={"maxiter": KNOT_ITERATIONS, "finite_diff_rel_step": FINITE_DIFFERENCE_STEP})
            if previous - objective.best_cost < IMPROVEMENT_THRESHOLD:
                break
            previous = objective.best_cost
    except _BudgetReached:
        exhausted = True
    logger.info(f"Start {start}: best cost {objective.best_cost:.6e} after {objective.count} evaluations")
    return {
        "start": start,
        "cost": objective.best_cost,
        "scalars": objective.best_scalars,
        "knots": objective.best_knots,
        "evaluations": objective.count,
        "exhausted": exhausted,
        "trace": objective.trace,
    }


def optimize(problem: OptimizationProblem, max_workers: Optional[int] = None) -> OptimizationOutcome:
    """
    Search for the lowest weighted beam-splitter cost within the budget.

    Args:
        problem: Campaign definition
        max_workers: Processes for concurrent starts (settings default)

    Returns:
        OptimizationOutcome whose efficiency is 1 - cost of a fresh evaluation of the best candidate
    """
    workers = get_settings().max_workers if max_workers is None else max(1, max_workers)
    seeds = np.random.SeedSequence(problem.seed).spawn(problem.n_starts)
    per_start = max(1, problem.budget // problem.n_starts)
    logger.info(f"Optimizing {problem.name}: {problem.n_starts} starts x {per_start} evaluations, "
                f"{len(sample_errors(problem.sampling))} error samples")

    if workers > 1 and problem.n_starts > 1:
        with ProcessPoolExecutor(max_workers=min(workers, problem.n_starts)) as pool:
            futures = [pool.submit(_run_start, problem, k, seeds[k], per_start) for k in range(problem.n_starts)]
            results = [future.result() for future in futures]
    else:
        results = [_run_start(problem, k, seeds[k], per_start) for k in range(problem.n_starts)]

    best = min((r for r in results if r["scalars"] is not None), key=lambda r: (r["cost"], r["start"]))
    knots = best["knots"]
    candidate = problem.candidate(best["scalars"], knots)
    cost = candidate_cost(candidate, sample_errors(problem.sampling), InteractionPictureModel(problem.n_max),
                          tol=problem.tol, norm_tolerance=1e-6)
    knot_times = problem.knot_times(best["scalars"]["t0"]) if knots is not None else []
    outcome = OptimizationOutcome(
        scalars=best["scalars"],
        knot_times=[float(t) for t in knot_times],
        knot_values=[] if knots is None else [float(v) for v in knots],
        cost=cost,
        efficiency=1.0 - cost,
        evaluations=sum(r["evaluations"] for r in results),
        budget_exhausted=any(r["exhausted"] for r in results),
        trace=[entry for r in results for entry in r["trace"]],
    )
    if outcome.budget_exhausted:
        logger.warning(f"{problem.name}: evaluation budget exhausted, returning best so far")
    logger.info(f"{problem.name}: OCT BS efficiency {outcome.efficiency:.6f} "
                f"at {', '.join(f'{k}={v:.4f}' for k, v in outcome.scalars.items())}")
    return outcome
