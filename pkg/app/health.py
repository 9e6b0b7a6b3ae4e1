"""
Health check router for the Double Bragg Diffraction Toolkit
Provides endpoints for monitoring toolkit health and status
"""

import logging
import os
import platform
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict

from fastapi import APIRouter, HTTPException

from app.config import get_settings
from app.control.campaigns import CAMPAIGN_DIR, available_campaigns

logger = logging.getLogger(__name__)
health_router = APIRouter()

SERVICE = "Double Bragg Diffraction Toolkit"
VERSION = "1.0.0"


def _numerics_check() -> Dict[str, Any]:
    """Versions of the numerical stack, or the import error"""
    try:
        import numpy
        import scipy
        return {"status": "ok", "numpy": numpy.__version__, "scipy": scipy.__version__}
    except ImportError as e:
        return {"status": "missing", "error": str(e)}


def _output_check(output_dir: str) -> str:
    path = Path(output_dir).resolve()
    while not path.exists() and path != path.parent:
        path = path.parent
    return "writable" if os.access(path, os.W_OK) else "read_only"


@health_router.get("/health")
async def health_check() -> Dict[str, Any]:
    """
    Basic health check endpoint
    Returns toolkit status and basic information
    """
    try:
        settings = get_settings()
        numerics = _numerics_check()
        campaigns = available_campaigns()

        health_status = {
            "status": "healthy",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "service": SERVICE,
            "version": VERSION,
            "environment": settings.environment,
            "checks": {
                "config": "ok",
                "numerics": numerics["status"],
                "campaigns": "ok" if campaigns else "missing",
                "output_dir": _output_check(settings.output_dir),
            }
        }

        if numerics["status"] != "ok":
            health_status["status"] = "unhealthy"
        elif not campaigns or health_status["checks"]["output_dir"] != "writable":
            health_status["status"] = "degraded"

        return health_status

    except Exception as e:
        logger.error(f"Health check failed: {e}")
        raise HTTPException(status_code=500, detail="Health check failed")


@health_router.get("/health/ready")
async def readiness_check() -> Dict[str, Any]:
    """
    Readiness check endpoint
    Returns whether the toolkit is ready to run simulations
    """
    try:
        numerics_ready = _numerics_check()["status"] == "ok"
        campaigns_ready = bool(available_campaigns())

        if not (numerics_ready and campaigns_ready):
            raise HTTPException(status_code=503, detail="Service not ready")

        return {
            "ready": True,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "checks": {"numerics": "ready", "campaigns": "ready"}
        }

    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Readiness check failed: {e}")
        raise HTTPException(status_code=500, detail="Readiness check failed")


@health_router.get("/health/live")
async def liveness_check() -> Dict[str, Any]:
    """
    Liveness check endpoint
    Returns whether the service is alive and running
    """
    return {
        "alive": True,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "service": SERVICE
    }


@health_router.get("/health/detailed")
async def detailed_health_check() -> Dict[str, Any]:
    """
    Detailed health check endpoint
    Returns resolved configuration and numerical stack versions
    """
    try:
        settings = get_settings()
        numerics = _numerics_check()

        return {
            "status": "healthy" if numerics["status"] == "ok" else "unhealthy",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "service": SERVICE,
            "version": VERSION,
            "environment": settings.environment,
            "debug": settings.debug,
            "log_level": settings.log_level,
            "configuration": settings.to_dict(),
            "numerics": numerics,
            "campaigns": {"directory": str(CAMPAIGN_DIR), "available": available_campaigns()},
            "system_info": {
                "python_version": platform.python_version(),
                "platform": platform.platform(),
                "cpu_count": os.cpu_count(),
            }
        }

    except Exception as e:
        logger.error(f"Detailed health check failed: {e}")
        raise HTTPException(status_code=500, detail="Detailed health check failed")
