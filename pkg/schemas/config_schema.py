"""Schemas for reading, validating and writing flat noise configuration files.

Configuration files are plain KEY=VALUE text read with python-dotenv. The
NoiseConfigSchema checks every key, rejects unknown ones and builds the
mirror, thermal, quantum and control objects. Dumping goes the other way so
that calibrated configurations can be written back and parsed identically.
"""

import hashlib
import math
from pathlib import Path

from dotenv import dotenv_values
from marshmallow import Schema, ValidationError, fields, post_dump, post_load, pre_load, validate, validates_schema

from models.mirror import MirrorSpec
from models.noise_config import NoiseConfig
from models.quantum import ControlScheme, QuantumParams
from models.thermal_model import ThermalNoiseModel
from utils.constraints import (
    ControlMode,
    DEFAULT_LOSS_BUDGET,
    DEFAULT_MIRROR_LOSS,
    DEFAULT_SINGLE_MIRROR_LOSS,
    OPTIMIZED_RATIO,
)
from utils.error_handlers import ConfigError, DomainError
from utils.validators import (
    asd_validators,
    budget_validators,
    layer_validators,
    loss_validators,
    parse_ratio,
    positive_validators,
    reflectivity_validators,
    slope_validators,
    validate_ratio,
)

QUANTUM_FIELDS = ("carrier_power", "laser_angular_frequency", "mirror_mass")


class NoiseConfigSchema(Schema):
    """Schema for a flat noise configuration file.

    Attributes:
        ietm_layers (int) | ietm_r (float): Exactly one is required.
        eetm_layers (int) | eetm_r (float): Optional; the EETM is solved from the loss budget when both are absent.
        ietm_loss, eetm_loss (float): Per-mirror power loss, default 50 ppm.
        loss_budget (float), reference_single_mirror_loss (float)
        brownian_ref_asd, thermorefractive_ref_asd (float): Required.
        f_ref, brownian_slope, tr_slope, layer_thickness_ratio (float)
        carrier_power, laser_angular_frequency, mirror_mass (float): Required together, and by controlled schemes.
        scheme (ControlMode), sideband_ratio (float | "optimized"), zeta (float)

    Pre-load:
        - Drop keys with empty values (`KEY=` lines)

    Post-load:
        - Build a NoiseConfig; physics errors surface as validation errors
    """
    ietm_layers = fields.Integer(data_key = "IETM_LAYERS", validate = layer_validators)
    ietm_r = fields.Float(data_key = "IETM_R", validate = reflectivity_validators)
    ietm_loss = fields.Float(data_key = "IETM_LOSS", load_default = DEFAULT_MIRROR_LOSS, validate = loss_validators)
    eetm_layers = fields.Integer(data_key = "EETM_LAYERS", validate = layer_validators)
    eetm_r = fields.Float(data_key = "EETM_R", validate = reflectivity_validators)
    eetm_loss = fields.Float(data_key = "EETM_LOSS", load_default = DEFAULT_MIRROR_LOSS, validate = loss_validators)
    loss_budget = fields.Float(data_key = "LOSS_BUDGET", load_default = DEFAULT_LOSS_BUDGET, validate = budget_validators)
    reference_single_mirror_loss = fields.Float(
        data_key = "REFERENCE_SINGLE_MIRROR_LOSS", load_default = DEFAULT_SINGLE_MIRROR_LOSS, validate = loss_validators
    )

    brownian_ref_asd = fields.Float(data_key = "BROWNIAN_REF_ASD", required = True, validate = asd_validators)
    f_ref = fields.Float(data_key = "F_REF", load_default = 100.0, validate = positive_validators)
    brownian_slope = fields.Float(data_key = "BROWNIAN_SLOPE", load_default = 0.5, validate = slope_validators)
    thermorefractive_ref_asd = fields.Float(data_key = "THERMOREFRACTIVE_REF_ASD", required = True, validate = asd_validators)
    tr_slope = fields.Float(data_key = "TR_SLOPE", load_default = 0.5, validate = slope_validators)
    layer_thickness_ratio = fields.Float(
        data_key = "LAYER_THICKNESS_RATIO", load_default = 1.0, validate = validate.Range(min = 0.0)
    )

    carrier_power = fields.Float(data_key = "CARRIER_POWER", validate = positive_validators)
    laser_angular_frequency = fields.Float(data_key = "LASER_ANGULAR_FREQUENCY", validate = positive_validators)
    mirror_mass = fields.Float(data_key = "MIRROR_MASS", validate = positive_validators)

    scheme = fields.Enum(ControlMode, by_value = True, data_key = "SCHEME", load_default = ControlMode.NO_CONTROL)
    sideband_ratio = fields.String(data_key = "SIDEBAND_RATIO", load_default = OPTIMIZED_RATIO, validate = validate_ratio)
    zeta = fields.Float(
        data_key = "ZETA",
        load_default = 0.0,
        validate = validate.Range(
            min = -math.pi / 2, max = math.pi / 2, min_inclusive = False, max_inclusive = False,
            error = "Readout angle must be in (-pi/2, pi/2) radians.",
        ),
    )

    @pre_load
    def drop_empty_values(self, data, **kwargs):
        return {key: value for key, value in data.items() if value not in (None, "")}

    @validates_schema
    def validate_config(self, data, **kwargs):
        if ("ietm_layers" in data) == ("ietm_r" in data):
            raise ValidationError({"IETM_R": ["Give exactly one of IETM_LAYERS or IETM_R."]})
        if "eetm_layers" in data and "eetm_r" in data:
            raise ValidationError({"EETM_R": ["Give at most one of EETM_LAYERS or EETM_R."]})
        given = [name for name in QUANTUM_FIELDS if name in data]
        if given and len(given) != len(QUANTUM_FIELDS):
            raise ValidationError({"_schema": ["CARRIER_POWER, LASER_ANGULAR_FREQUENCY and MIRROR_MASS go together."]})
        if data.get("scheme", ControlMode.NO_CONTROL) is not ControlMode.NO_CONTROL and not given:
            raise ValidationError({"SCHEME": ["Controlled schemes need CARRIER_POWER, LASER_ANGULAR_FREQUENCY and MIRROR_MASS."]})

    @post_load
    def make_config(self, data, **kwargs):
        try:
            return NoiseConfig(
                ietm = _mirror(data.get("ietm_layers"), data.get("ietm_r"), data["ietm_loss"]),
                eetm = _mirror(data.get("eetm_layers"), data.get("eetm_r"), data["eetm_loss"]),
                model = ThermalNoiseModel(
                    brownian_ref_asd = data["brownian_ref_asd"],
                    thermorefractive_ref_asd = data["thermorefractive_ref_asd"],
                    f_ref = data["f_ref"],
                    brownian_slope = data["brownian_slope"],
                    tr_slope = data["tr_slope"],
                    layer_thickness_ratio = data["layer_thickness_ratio"],
                ),
                params = QuantumParams(
                    carrier_power_i0 = data["carrier_power"],
                    laser_angular_frequency_w0 = data["laser_angular_frequency"],
                    mirror_mass_m = data["mirror_mass"],
                ) if "carrier_power" in data else None,
                scheme = ControlScheme(data["scheme"], parse_ratio(data["sideband_ratio"]), data["zeta"]),
                loss_budget = data["loss_budget"],
                reference_single_mirror_loss = data["reference_single_mirror_loss"],
                eetm_loss = data["eetm_loss"],
            )
        except DomainError as err:
            raise ValidationError({"_schema": [str(err)]})

    @post_dump
    def drop_none(self, data, **kwargs):
        return {key: value for key, value in data.items() if value is not None}


def _mirror(layers, r, loss):
    if layers is not None:
        return MirrorSpec.from_layers(layers, loss)
    if r is not None:
        return MirrorSpec.from_reflectivity(r, loss)
    return None


config_schema = NoiseConfigSchema()


# ========== FILE HELPERS ==========
def load_config(path):
    """Parse and validate the configuration file at `path`."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Configuration file not found: {path}")
    return config_schema.load(dotenv_values(path))


def _format_value(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def config_text(config, comments = ()):
    """The configuration as KEY=VALUE lines, preceded by `#` comment lines."""
    lines = [f"# {comment}" for comment in comments]
    lines += [f"{key}={_format_value(value)}" for key, value in config_schema.dump(config.flat()).items()]
    return "\n".join(lines) + "\n"


def config_hash(config):
    """sha256 of the canonical configuration text."""
    return hashlib.sha256(config_text(config).encode("utf-8")).hexdigest()
