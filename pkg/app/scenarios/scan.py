"""
Grid scans over scenario parameters.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from app.config import get_settings
from app.records import ScanRecord

from .config import ScenarioConfig, validate_axes
from .tiers import box_duration_scan, simulate

logger = logging.getLogger(__name__)

Point = Dict[str, float]


def grid_points(axes: Dict[str, Sequence[float]]) -> List[Point]:
    """Cartesian product of the axes, first axis slowest"""
    names = list(axes)
    return [dict(zip(names, values)) for values in itertools.product(*(axes[name] for name in names))]


def _simulate_point(config: ScenarioConfig, point: Point) -> ScanRecord:
    return simulate(config.with_axes(point))


def _box_groups(config: ScenarioConfig, axes: Dict[str, Sequence[float]]) -> List[Tuple[Point, List[float]]]:
    others = {name: values for name, values in axes.items() if name != "tau"}
    return [(point, [float(t) for t in axes["tau"]]) for point in grid_points(others)]


def _run_box_group(config: ScenarioConfig, point: Point, taus: List[float]) -> List[ScanRecord]:
    return box_duration_scan(config.with_axes(point) if point else config, taus)


def run_scan(config: ScenarioConfig, axes: Optional[Dict[str, Sequence[float]]] = None,
             max_workers: Optional[int] = None) -> List[ScanRecord]:
    """
    Evaluate the configured tier at every grid point.

    Box-pulse scans over τ are served from one trajectory per remaining grid
    point. Records come back in grid order whatever the execution order.

    Args:
        config: Base scenario; axis values override its fields
        axes: Named grids (defaults to ``config.axes``)
        max_workers: Processes for concurrent points (settings default)

    Returns:
        One ScanRecord per grid point, first axis slowest
    """
    axes = dict(config.axes if axes is None else axes)
    validate_axes(axes)
    config.check_compatibility()
    workers = get_settings().max_workers if max_workers is None else max(1, max_workers)
    points = grid_points(axes)
    logger.info(f"Scan {config.scenario_id} on {config.tier_spec.label}: {len(points)} points, {workers} workers")

    if config.pulse.kind == "box" and "tau" in axes and not config.wavepacket:
        groups = _box_groups(config, axes)
        if workers > 1 and len(groups) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_box_group, config, point, taus) for point, taus in groups]
                batches = [future.result() for future in futures]
        else:
            batches = [_run_box_group(config, point, taus) for point, taus in groups]
        by_point = {}
        for (point, taus), batch in zip(groups, batches):
            for tau, record in zip(taus, batch):
                by_point[_key({**point, "tau": tau})] = record
        return [by_point[_key(point)] for point in points]

    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_simulate_point, config, point) for point in points]
            return [future.result() for future in futures]
    return [_simulate_point(config, point) for point in points]


def _key(point: Point) -> Tuple[Tuple[str, float], ...]:
    return tuple(sorted((name, float(value)) for name, value in point.items()))
