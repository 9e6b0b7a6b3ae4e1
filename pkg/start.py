#!/usr/bin/env python3
"""
Startup script for the Double Bragg Diffraction Toolkit
Runs a preflight (numerical stack, campaign presets, artifact directory) and serves the API
"""

import os
import sys
from pathlib import Path

import uvicorn


def preflight(output_dir: str) -> bool:
    """Verify the numerical stack, the shipped campaigns and the artifact directory"""
    try:
        import numpy
        import scipy
        print(f"✅ numpy {numpy.__version__}, scipy {scipy.__version__}")
    except ImportError as e:
        print(f"❌ Missing dependency: {e}")
        print("Install with: pip install -r requirements.txt")
        return False

    from app.control import available_campaigns
    campaigns = available_campaigns()
    if not campaigns:
        print("❌ No campaign definitions found under campaigns/")
        return False
    print(f"✅ Campaigns: {', '.join(campaigns)}")

    path = Path(output_dir)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        print(f"❌ Cannot create output directory {path}: {e}")
        return False
    print(f"✅ Artifacts: {path.resolve()}")
    return True


def main():
    os.environ.setdefault('ENVIRONMENT', 'development')
    os.environ.setdefault('LOG_LEVEL', 'INFO')

    from app.config import get_settings
    settings = get_settings()

    print("=" * 60)
    print(f"Double Bragg Diffraction Toolkit ({settings.environment})")
    print("=" * 60)

    if not preflight(settings.output_dir):
        sys.exit(1)

    reload = settings.environment == 'development'
    print(f"\n🚀 Serving on http://{settings.api_host}:{settings.api_port} (reload={reload})")
    print(f"Docs: http://localhost:{settings.api_port}/api/docs")
    print("Press Ctrl+C to stop")
    print("-" * 60)

    try:
        uvicorn.run(
            "app.main:app",
            host=settings.api_host,
            port=settings.api_port,
            reload=reload,
            log_level=settings.log_level.lower(),
        )
    except KeyboardInterrupt:
        print("\n🛑 Stopped")


if __name__ == "__main__":
    main()
