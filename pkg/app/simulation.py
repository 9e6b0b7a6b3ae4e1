"""
Simulation router for the Double Bragg Diffraction Toolkit
Runs single scenarios, converts units and lists the reproduction presets
"""

import logging
from datetime import datetime, timezone
from typing import Any, Dict, Literal, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.config import get_settings, get_si_context
from app.control.campaigns import available_campaigns
from app.errors import ConfigurationError, DbdError, NumericalToleranceError
from app.model.units import Direction, Quantity, SiContext, UnitSystem, si_convert
from app.scenarios import FIGURES, PRESET_VERSION, PULSES, ScenarioConfig, simulate

logger = logging.getLogger(__name__)
simulation_router = APIRouter()


class ConversionRequest(BaseModel):
    value: float
    quantity: Literal["time", "frequency", "momentum"] = "time"
    direction: Literal["to_si", "to_natural"] = "to_si"
    wavelength: Optional[float] = Field(default=None, gt=0, description="wavelength [m]")
    mass_u: Optional[float] = Field(default=None, gt=0, description="atomic mass [u]")


def _http_error(e: DbdError) -> HTTPException:
    """Map toolkit errors onto HTTP status codes"""
    if isinstance(e, ConfigurationError):
        status = 400
    elif isinstance(e, NumericalToleranceError):
        status = 422
    else:
        status = 500
    return HTTPException(status_code=status, detail=e.to_dict())


@simulation_router.post("/simulate")
def simulate_scenario(config: ScenarioConfig) -> Dict[str, Any]:
    """
    Evaluate one scenario on its model tier
    Returns the scan record: parameters, populations per order, metrics, diagnostics
    """
    try:
        record = simulate(config)
        return {
            "status": "ok",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "scenario_id": config.scenario_id,
            "tier": config.tier_spec.label,
            "record": record.to_dict(),
        }
    except DbdError as e:
        logger.error(f"Simulation {config.scenario_id} failed: {e.fail_type}: {e.message}")
        raise _http_error(e)
    except Exception as e:
        logger.error(f"Simulation {config.scenario_id} failed: {e}")
        raise HTTPException(status_code=500, detail="Simulation failed")


@simulation_router.post("/convert-units")
async def convert_units(request: ConversionRequest) -> Dict[str, Any]:
    """
    Convert between recoil units and SI
    Uses the configured wavelength and mass unless the request overrides them
    """
    settings = get_settings()
    wavelength = request.wavelength or settings.wavelength
    mass_u = request.mass_u or settings.atomic_mass_u
    try:
        if request.wavelength is None and request.mass_u is None:
            context = get_si_context()
        else:
            context = SiContext.from_atomic_mass(wavelength, mass_u)
        result = si_convert(UnitSystem(context), request.value, Direction(request.direction),
                            Quantity(request.quantity))
    except DbdError as e:
        logger.error(f"Unit conversion failed: {e.message}")
        raise _http_error(e)
    return {
        "value": request.value,
        "quantity": request.quantity,
        "direction": request.direction,
        "result": result,
        "recoil_frequency": context.recoil_frequency,
        "wavelength": wavelength,
        "mass_u": mass_u,
    }


@simulation_router.get("/presets")
async def list_presets() -> Dict[str, Any]:
    """Figure reproductions, optimization campaigns and published pulse parameters"""
    return {
        "preset_version": PRESET_VERSION,
        "figures": {
            figure_id: {"description": preset.description, "campaign": preset.campaign, "slow": preset.slow}
            for figure_id, preset in FIGURES.items()
        },
        "campaigns": available_campaigns(),
        "pulses": {name: list(triple.as_tuple()) for name, triple in PULSES.items()},
    }
