"""
Scan records and the CSV artifact format.

CSV files are UTF-8 with LF line endings; floats are written with 12
significant digits so repeated runs produce byte-identical files.
"""

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, float) or hasattr(value, "__float__"):
        return f"{float(value):.12g}"
    return str(value)


def order_label(order: int) -> str:
    return f"P({order:+d})" if order else "P(0)"


@dataclass
class ScanRecord:
    """One evaluated grid point: parameters, bare-order populations, derived metrics"""
    parameters: Dict[str, float]
    populations: Dict[int, float]
    metrics: Dict[str, float] = field(default_factory=dict)
    diagnostics: Dict[str, object] = field(default_factory=dict)

    def population(self, order: int) -> float:
        return self.populations.get(order, 0.0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "parameters": dict(self.parameters),
            "populations": {str(k): v for k, v in sorted(self.populations.items())},
            "metrics": dict(self.metrics),
            "diagnostics": dict(self.diagnostics),
        }


def records_table(records: Sequence[ScanRecord], orders: Optional[Sequence[int]] = None):
    """Header and rows for a list of records sharing parameter and metric names"""
    if not records:
        return [], []
    parameter_names = list(records[0].parameters)
    metric_names = list(records[0].metrics)
    if orders is None:
        orders = sorted({order for record in records for order in record.populations})
    header = parameter_names + [order_label(order) for order in orders] + metric_names
    rows = [
        [record.parameters[name] for name in parameter_names]
        + [record.population(order) for order in orders]
        + [record.metrics.get(name, float("nan")) for name in metric_names]
        for record in records
    ]
    return header, rows


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    logger.info(f"Wrote {path}")
    return path


def write_records_csv(path: PathLike, records: Sequence[ScanRecord],
                      orders: Optional[Sequence[int]] = None) -> Path:
    header, rows = records_table(records, orders)
    return write_csv(path, header, rows)


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))
