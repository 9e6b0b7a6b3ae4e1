"""
Trajectory CSV and wavepacket JSON dumps.
"""

import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from app.records import order_label, write_csv

from .models import Trajectory
from .wavepacket import MomentumWavepacket

logger = logging.getLogger(__name__)


def write_trajectory_csv(path: Union[str, Path], trajectory: Trajectory) -> Path:
    """Columns t, P(order) for every order, norm"""
    header = ["t"] + [order_label(order) for order in trajectory.orders] + ["norm"]
    rows = (
        [t, *populations, norm]
        for t, populations, norm in zip(trajectory.times, trajectory.populations, trajectory.norms)
    )
    return write_csv(path, header, rows)


def packet_to_dict(packet: MomentumWavepacket) -> dict:
    return {
        "grid_min": float(packet.grid[0]),
        "grid_max": float(packet.grid[-1]),
        "n_points": int(packet.grid.size),
        "p0": packet.p0,
        "sigma_p": packet.sigma_p,
        "re": [float(v) for v in packet.amplitudes.real],
        "im": [float(v) for v in packet.amplitudes.imag],
    }


def packet_from_dict(data: dict) -> MomentumWavepacket:
    n_points = int(data["n_points"])
    grid = np.linspace(float(data["grid_min"]), float(data["grid_max"]), n_points)
    spacing = (grid[-1] - grid[0]) / (n_points - 1) if n_points > 1 else 1.0
    amplitudes = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
    return MomentumWavepacket(grid=grid, amplitudes=amplitudes, spacing=spacing,
                              p0=float(data.get("p0", 0.0)), sigma_p=data.get("sigma_p"))


def write_packet_json(path: Union[str, Path], packet: MomentumWavepacket) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(packet_to_dict(packet)), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def read_packet_json(path: Union[str, Path]) -> MomentumWavepacket:
    return packet_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
