"""
Double Bragg Diffraction Toolkit
Main FastAPI application entry point
"""

import logging
from contextlib import asynccontextmanager
from pathlib import Path

import uvicorn
from fastapi import FastAPI

from app.config import get_settings
from app.health import SERVICE as SERVICE_NAME, VERSION as SERVICE_VERSION, health_router
from app.simulation import simulation_router

# Configure logging
logging.basicConfig(
    level=getattr(logging, get_settings().log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log the resolved settings on startup and make sure the artifact directory exists"""
    settings = get_settings()
    output_dir = Path(settings.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"Starting {SERVICE_NAME} {SERVICE_VERSION} ({settings.environment})")
    logger.info(f"Artifacts in {output_dir.resolve()}, {settings.max_workers} worker(s)")
    if settings.debug:
        logger.debug(f"Settings: {settings.to_dict()}")
    yield
    logger.info(f"Shutting down {SERVICE_NAME}")


app = FastAPI(
    title=SERVICE_NAME,
    description="Double Bragg diffraction simulation, robustness scans and detuning-control optimization",
    version=SERVICE_VERSION,
    docs_url="/api/docs",
    redoc_url="/api/redoc",
    lifespan=lifespan,
)

app.include_router(health_router, prefix="/api", tags=["health"])
app.include_router(simulation_router, prefix="/api", tags=["simulation"])


@app.get("/")
async def root():
    """Service banner with the entry points"""
    return {
        "message": SERVICE_NAME,
        "version": SERVICE_VERSION,
        "status": "operational",
        "endpoints": ["/api/health", "/api/simulate", "/api/convert-units", "/api/presets"],
    }


if __name__ == "__main__":
    settings = get_settings()
    uvicorn.run("app.main:app", host=settings.api_host, port=settings.api_port, log_level="info")
