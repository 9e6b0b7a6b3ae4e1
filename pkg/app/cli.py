"""
Command-line interface.

    python -m app simulate --config scenario.json --tier five_level
    python -m app scan --config scenario.json --axis tau=0:10:201 --axis omega=0.5,1,2
    python -m app reproduce fig3 --out results
    python -m app optimize campaigns/pol_oct.json --seed 3
    python -m app validate --tier-a tls --tier-b exact --config scenario.json
    python -m app convert-units 7.87 --quantity time --direction to_si

Exit codes: 0 success, 2 configuration error, 3 numerical tolerance failure
or failed reproduction checks.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from app.config import get_settings, get_si_context
from app.control.campaigns import load_campaign, preset_campaign, write_outcome
from app.control.optimizer import optimize
from app.errors import ConfigurationError, DbdError, NumericalToleranceError
from app.model.units import Direction, Quantity, SiContext, UnitSystem, si_convert
from app.records import write_records_csv
from app.scenarios import FIGURES, ScenarioConfig, load_config, reproduce, run_scan, simulate, validate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = ConfigurationError.exit_code
EXIT_NUMERICAL = NumericalToleranceError.exit_code


def parse_axis(text: str) -> Dict[str, List[float]]:
    """``name=start:stop[:count]`` (inclusive linspace, count defaults to DBD_SCAN_POINTS) or ``name=v1,v2,...``"""
    name, sep, values = text.partition("=")
    if not sep or not name or not values:
        raise ConfigurationError(f"axis {text!r} must look like name=start:stop:count or name=v1,v2")
    try:
        if ":" in values:
            bounds = values.split(":")
            if len(bounds) not in (2, 3):
                raise ValueError(values)
            start, stop = bounds[:2]
            count = bounds[2] if len(bounds) == 3 else get_settings().scan_points
            grid = np.linspace(float(start), float(stop), int(count))
        else:
            grid = np.array([float(v) for v in values.split(",")])
    except ValueError:
        raise ConfigurationError(f"axis {text!r} has non-numeric values")
    return {name.strip(): [float(v) for v in np.round(grid, 12)]}


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    config = load_config(args.config) if args.config else ScenarioConfig()
    updates = {}
    if args.tier:
        updates["tier"] = args.tier
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.dt is not None:
        updates["dt"] = args.dt
    if args.tol is not None:
        updates["tol"] = args.tol
    if updates:
        config = ScenarioConfig.model_validate({**config.model_dump(), **updates})
    return config


def _out_dir(args: argparse.Namespace, config: Optional[ScenarioConfig] = None) -> Path:
    if args.out:
        return Path(args.out)
    if config is not None and config.output_dir:
        return Path(config.output_dir)
    return Path(get_settings().output_dir)


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _scenario(args)
    record = simulate(config)
    out = _out_dir(args, config)
    write_records_csv(out / f"{config.scenario_id}_simulate.csv", [record])
    _print_json(record.to_dict())
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    config = _scenario(args)
    axes = dict(config.axes)
    for text in args.axis or []:
        axes.update(parse_axis(text))
    if not axes:
        raise ConfigurationError("scan needs at least one axis (--axis or config 'axes')")
    records = run_scan(config, axes, args.workers)
    path = write_records_csv(_out_dir(args, config) / f"{config.scenario_id}_scan.csv", records)
    print(f"{len(records)} points written to {path}")
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    out = Path(args.out) / args.figure if args.out else None
    result = reproduce(args.figure, out, outcome_path=args.outcome, max_workers=args.workers)
    _print_json(result.to_dict())
    if not result.passed:
        logger.error(f"{args.figure}: failed checks {', '.join(result.failed_checks)}")
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    path = Path(args.campaign)
    campaign = load_campaign(path) if path.suffix == ".json" else preset_campaign(args.campaign)
    outcome = optimize(campaign.to_problem(seed=args.seed), args.workers)
    target = _out_dir(args) / f"{campaign.name}_outcome.json"
    write_outcome(target, outcome, campaign)
    summary = outcome.to_dict()
    summary.pop("trace")
    _print_json(summary)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    config = _scenario(args)
    if args.axis:
        axes = dict(config.axes)
        for text in args.axis:
            axes.update(parse_axis(text))
        config = config.model_copy(update={"axes": axes})
    report = validate(args.tier_a, args.tier_b, config, args.workers)
    _print_json(report.to_dict())
    return EXIT_OK


def cmd_convert_units(args: argparse.Namespace) -> int:
    if args.wavelength is None and args.mass_u is None:
        context = get_si_context()
    else:
        settings = get_settings()
        wavelength = settings.wavelength if args.wavelength is None else args.wavelength
        mass_u = settings.atomic_mass_u if args.mass_u is None else args.mass_u
        context = SiContext.from_atomic_mass(wavelength, mass_u)
    units = UnitSystem(context)
    value = si_convert(units, args.value, Direction(args.direction), Quantity(args.quantity))
    _print_json({"value": args.value, "quantity": args.quantity, "direction": args.direction, "result": value})
    return EXIT_OK


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="scenario JSON file")
    parser.add_argument("--tier", help="tls | rwa | five_level | n_level(n) | exact")
    parser.add_argument("--dt", type=float, help="split-step time step")
    parser.add_argument("--tol", type=float, help="few-level relative tolerance")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="logging level (default LOG_LEVEL or INFO)")
    common.add_argument("--seed", type=int, default=None, help="seed for sampling and optimizer starts")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--workers", type=int, default=None, help="worker processes")

    parser = argparse.ArgumentParser(
        prog="python -m app",
        description="Double Bragg diffraction simulation and pulse optimization",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate_parser = commands.add_parser("simulate", parents=[common], help="single evolution")
    _add_scenario_flags(simulate_parser)
    simulate_parser.set_defaults(handler=cmd_simulate)

    scan_parser = commands.add_parser("scan", parents=[common], help="grid scan")
    _add_scenario_flags(scan_parser)
    scan_parser.add_argument("--axis", action="append", help="name=start:stop:count or name=v1,v2,...")
    scan_parser.set_defaults(handler=cmd_scan)

    reproduce_parser = commands.add_parser("reproduce", parents=[common], help="preset figure reproduction")
    reproduce_parser.add_argument("figure", help=", ".join(sorted(FIGURES)))
    reproduce_parser.add_argument("--outcome", help="existing optimization outcome JSON")
    reproduce_parser.set_defaults(handler=cmd_reproduce)

    optimize_parser = commands.add_parser("optimize", parents=[common], help="run an optimization campaign")
    optimize_parser.add_argument("campaign", help="campaign JSON file or preset name")
    optimize_parser.set_defaults(handler=cmd_optimize)

    validate_parser = commands.add_parser("validate", parents=[common], help="compare two model tiers")
    _add_scenario_flags(validate_parser)
    validate_parser.add_argument("--tier-a", required=True)
    validate_parser.add_argument("--tier-b", required=True)
    validate_parser.add_argument("--axis", action="append", help="name=start:stop:count or name=v1,v2,...")
    validate_parser.set_defaults(handler=cmd_validate)

    convert_parser = commands.add_parser("convert-units", parents=[common], help="recoil units <-> SI")
    convert_parser.add_argument("value", type=float)
    convert_parser.add_argument("--quantity", choices=[q.value for q in Quantity], default="time")
    convert_parser.add_argument("--direction", choices=[d.value for d in Direction], default="to_si")
    convert_parser.add_argument("--wavelength", type=float, help="wavelength [m]")
    convert_parser.add_argument("--mass-u", type=float, help="atomic mass [u]")
    convert_parser.set_defaults(handler=cmd_convert_units)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = args.log_level or get_settings().log_level
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.INFO),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except DbdError as e:
        logger.error(f"{e.fail_type}: {e.message} {e.detail if e.detail else ''}".rstrip())
        return e.exit_code
    except ValidationError as e:
        logger.error(f"invalid configuration: {e}")
        return EXIT_CONFIG
    except (FileNotFoundError, json.JSONDecodeError) as e:
        logger.error(f"cannot read input: {e}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
