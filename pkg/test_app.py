#!/usr/bin/env python3
"""
Test script to verify the FastAPI application
Exercises the health, simulation, unit-conversion and preset endpoints
"""

import os
import sys
from datetime import datetime, timedelta

import pytest
from fastapi.testclient import TestClient

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '.'))


@pytest.fixture(scope="module")
def client():
    from app.main import app
    return TestClient(app)


def test_imports():
    """Test that all required modules can be imported"""
    from app import cli, config, health, main, simulation
    from app.health import health_router
    from app.simulation import simulation_router

    assert main.app.title == "Double Bragg Diffraction Toolkit"
    assert health_router.routes and simulation_router.routes
    assert callable(cli.main) and callable(config.get_settings)


def test_configuration(monkeypatch):
    """Test configuration parsing"""
    from app.config import get_settings, reset_settings

    monkeypatch.setenv("DBD_MAX_WORKERS", "3")
    monkeypatch.setenv("DBD_OUTPUT_DIR", "custom_results")
    reset_settings()
    try:
        settings = get_settings()
        assert settings.max_workers == 3
        assert settings.output_dir == "custom_results"
        assert settings.to_dict()["output_dir"] == "custom_results"
        assert get_settings() is settings
    finally:
        monkeypatch.undo()
        reset_settings()


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["status"] == "operational"


def test_health_endpoints(client):
    health = client.get("/api/health").json()
    assert health["service"] == "Double Bragg Diffraction Toolkit"
    assert health["checks"]["numerics"] == "ok"
    assert health["checks"]["campaigns"] == "ok"

    assert client.get("/api/health/live").json()["alive"] is True
    assert client.get("/api/health/ready").json()["ready"] is True

    detailed = client.get("/api/health/detailed").json()
    assert "pol_oct" in detailed["campaigns"]["available"]
    assert detailed["numerics"]["status"] == "ok"


def test_simulate_endpoint(client):
    body = {"tier": "rwa", "pulse": {"kind": "box", "omega": 2.0, "tau": 1.0}}
    response = client.post("/api/simulate", json=body)
    assert response.status_code == 200
    payload = response.json()
    assert payload["tier"] == "rwa"
    record = payload["record"]
    assert record["diagnostics"]["closed_form"] is True
    assert set(record["populations"]) == {"-1", "0", "1"}
    assert sum(record["populations"].values()) == pytest.approx(1.0)


def test_simulate_endpoint_errors(client):
    incompatible = {"tier": "tls", "detuning": {"kind": "sweep_polarization"}}
    response = client.post("/api/simulate", json=incompatible)
    assert response.status_code == 400
    assert response.json()["detail"]["fail_type"] == "incompatible_tier"

    unknown_tier = client.post("/api/simulate", json={"tier": "bogus"})
    assert unknown_tier.status_code == 400

    malformed = client.post("/api/simulate", json={"epsilon": 2.0})
    assert malformed.status_code == 422


@pytest.mark.parametrize("method,path,body", [
    ("get", "/api/health", None),
    ("get", "/api/health/live", None),
    ("get", "/api/health/ready", None),
    ("get", "/api/health/detailed", None),
    ("post", "/api/simulate", {"tier": "rwa", "pulse": {"kind": "box", "omega": 2.0, "tau": 1.0}}),
])
def test_timestamps_are_utc_aware(client, method, path, body):
    response = client.get(path) if method == "get" else client.post(path, json=body)
    assert response.status_code == 200
    stamp = datetime.fromisoformat(response.json()["timestamp"])
    assert stamp.utcoffset() == timedelta(0)


def test_convert_units_endpoint(client):
    response = client.post("/api/convert-units", json={"value": 7.87})
    assert response.status_code == 200
    payload = response.json()
    assert payload["result"] == pytest.approx(332e-6, abs=2e-6)
    assert payload["recoil_frequency"] == pytest.approx(2.371e4, rel=1e-3)

    back = client.post("/api/convert-units",
                       json={"value": payload["result"], "direction": "to_natural"}).json()
    assert back["result"] == pytest.approx(7.87)

    assert client.post("/api/convert-units", json={"value": 1.0, "wavelength": -1.0}).status_code == 422


def test_presets_endpoint(client):
    payload = client.get("/api/presets").json()
    assert payload["preset_version"] == "1"
    assert payload["pulses"]["pol_oct"] == [1.617, 0.583, 2.859]
    assert payload["figures"]["combined_map"]["campaign"] == "combined"
    assert "sigma05" in payload["campaigns"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
