"""
Double Bragg Diffraction Toolkit
Configuration management with .env support
"""

import logging
import os
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)

# Load environment variables from .env file
try:
    from dotenv import load_dotenv
    # Look for .env file in project root
    env_path = Path(__file__).parent.parent / '.env'
    if env_path.exists():
        load_dotenv(env_path)
        logger.debug(f"Loaded environment from: {env_path}")
    elif Path('.env').exists():
        load_dotenv('.env')
        logger.debug("Loaded environment from: ./.env")
except ImportError:
    logger.warning("python-dotenv not available - using system environment variables only")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"Ignoring non-numeric {name}={raw!r}, using {default}")
        return default


def _env_int(name: str, default: int) -> int:
    return int(_env_float(name, default))


class Settings:
    """Toolkit settings read from the environment"""

    def __init__(self):
        # Environment
        self.environment = os.getenv('ENVIRONMENT', 'development')
        self.debug = os.getenv('DEBUG', 'false').lower() == 'true'
        self.log_level = os.getenv('LOG_LEVEL', 'INFO')

        # Artifacts and reproducibility
        self.output_dir = os.getenv('DBD_OUTPUT_DIR', 'results')
        self.seed = _env_int('DBD_SEED', 0)
        self.max_workers = max(1, _env_int('DBD_MAX_WORKERS', max(1, (os.cpu_count() or 2) // 2)))

        # Integrators
        self.few_level_rtol = _env_float('DBD_FEW_LEVEL_RTOL', 1e-10)
        self.few_level_atol = _env_float('DBD_FEW_LEVEL_ATOL', 1e-12)
        self.split_step_dt = _env_float('DBD_SPLIT_STEP_DT', 1e-3)
        self.magnus_step = _env_float('DBD_MAGNUS_STEP', 1e-3)

        # Detuning control
        self.n_knots = _env_int('DBD_KNOTS', 32)
        self.detuning_bound = _env_float('DBD_DETUNING_BOUND', 4.0)
        self.scan_points = _env_int('DBD_SCAN_POINTS', 200)

        # SI context (defaults: 87Rb D2 line)
        self.wavelength = _env_float('DBD_WAVELENGTH', 780.1e-9)
        self.atomic_mass_u = _env_float('DBD_ATOMIC_MASS_U', 86.909180531)

        # HTTP surface
        self.api_host = os.getenv('API_HOST', '0.0.0.0')
        self.api_port = _env_int('API_PORT', 8000)

        self._debug_config()

    def _debug_config(self):
        """Log the resolved configuration (only in development)"""
        if self.environment == 'development' and self.debug:
            for key, value in self.to_dict().items():
                logger.debug(f"config {key} = {value}")

    def to_dict(self) -> dict:
        """Convert settings to dictionary for debugging"""
        return {
            'environment': self.environment,
            'debug': self.debug,
            'log_level': self.log_level,
            'output_dir': self.output_dir,
            'seed': self.seed,
            'max_workers': self.max_workers,
            'few_level_rtol': self.few_level_rtol,
            'few_level_atol': self.few_level_atol,
            'split_step_dt': self.split_step_dt,
            'magnus_step': self.magnus_step,
            'n_knots': self.n_knots,
            'detuning_bound': self.detuning_bound,
            'scan_points': self.scan_points,
            'wavelength': self.wavelength,
            'atomic_mass_u': self.atomic_mass_u,
        }


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get cached settings instance"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment"""
    global _settings
    _settings = None


def get_si_context():
    """Get the SI context configured for unit conversion"""
    from app.model.units import SiContext

    settings = get_settings()
    return SiContext.from_atomic_mass(settings.wavelength, settings.atomic_mass_u)
