"""
Pytest fixtures for the noise engine: a Flask app in TESTING mode with its CLI runner,
a session-wide calibration and a helper writing flat configuration files into tmp_path.
"""

import pytest

from main import create_app
from models.quantum import QuantumParams
from models.thermal_model import ThermalNoiseModel
from noise.optimize import calibrate

BASE_CONFIG = {
    "IETM_LAYERS": "1",
    "BROWNIAN_REF_ASD": "2.8e-21",
    "THERMOREFRACTIVE_REF_ASD": "1.9e-20",
    "LAYER_THICKNESS_RATIO": "1.42",
    "CARRIER_POWER": "1e5",
    "LASER_ANGULAR_FREQUENCY": "1.7704e15",
    "MIRROR_MASS": "40",
}


@pytest.fixture
def app():
    app = create_app()
    app.config["TESTING"] = True
    app.config["CONFIG_DIR"] = None
    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def write_config(tmp_path):
    """Write BASE_CONFIG updated with `overrides` (None drops a key); returns the path."""
    def _write(name = "noise.env", **overrides):
        values = {**BASE_CONFIG, **overrides}
        path = tmp_path / name
        path.write_text("".join(f"{key}={value}\n" for key, value in values.items() if value is not None))
        return path
    return _write


@pytest.fixture
def model():
    return ThermalNoiseModel(brownian_ref_asd = 2.8e-21, thermorefractive_ref_asd = 1.9e-20, layer_thickness_ratio = 1.42)


@pytest.fixture
def params():
    return QuantumParams(carrier_power_i0 = 1e5, laser_angular_frequency_w0 = 1.7704e15, mirror_mass_m = 40.0)


@pytest.fixture(scope = "session")
def calibration():
    return calibrate()
