"""Schemas for calibration targets files and calibration reports.

Targets files use the same flat KEY=VALUE format as configuration files;
every key is optional and falls back to the CalibrationTargets default.
"""

from pathlib import Path

from dotenv import dotenv_values
from marshmallow import Schema, fields, post_load, pre_load, validate

from models.optimization_result import CalibrationTargets
from utils.error_handlers import ConfigError
from utils.validators import budget_validators, positive_validators

DEFAULTS = CalibrationTargets()


def _positive(name):
    return fields.Float(data_key = name.upper(), load_default = getattr(DEFAULTS, name), validate = positive_validators)


class CalibrationTargetsSchema(Schema):
    """Schema for the scalar levels a calibration is fitted to.

    Validations:
        - Every level, frequency and physical input is strictly positive
        - tolerance lies in (0, 1]
        - controlled_layers and single_mirror_layers are nonnegative integers
    """
    total_asd_paper = _positive("total_asd_paper")
    improvement_no_control = _positive("improvement_no_control")
    control_vs_thermal_ratio = _positive("control_vs_thermal_ratio")
    eetm_balance = _positive("eetm_balance")
    eetm_balance_weight = fields.Float(
        data_key = "EETM_BALANCE_WEIGHT", load_default = DEFAULTS.eetm_balance_weight, validate = validate.Range(min = 0.0)
    )
    controlled_improvement = _positive("controlled_improvement")
    tolerance = fields.Float(
        data_key = "TOLERANCE", load_default = DEFAULTS.tolerance,
        validate = validate.Range(min = 0.0, max = 1.0, min_inclusive = False)
    )
    frequency = _positive("frequency")
    loss_budget = fields.Float(data_key = "LOSS_BUDGET", load_default = DEFAULTS.loss_budget, validate = budget_validators)
    controlled_layers = fields.Integer(
        data_key = "CONTROLLED_LAYERS", load_default = DEFAULTS.controlled_layers, validate = validate.Range(min = 0, max = 15)
    )
    single_mirror_layers = fields.Integer(
        data_key = "SINGLE_MIRROR_LAYERS", load_default = DEFAULTS.single_mirror_layers, validate = validate.Range(min = 0)
    )
    layer_thickness_ratio = fields.Float(
        data_key = "LAYER_THICKNESS_RATIO", load_default = DEFAULTS.layer_thickness_ratio, validate = validate.Range(min = 0.0)
    )
    carrier_power = _positive("carrier_power")
    laser_angular_frequency = _positive("laser_angular_frequency")

    @pre_load
    def drop_empty_values(self, data, **kwargs):
        return {key: value for key, value in data.items() if value not in (None, "")}

    @post_load
    def make_targets(self, data, **kwargs):
        return CalibrationTargets(**data)


targets_schema = CalibrationTargetsSchema()


def load_targets(path = None):
    """Targets from a flat file, or the defaults when no path is given."""
    if path is None:
        return CalibrationTargets()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Targets file not found: {path}")
    return targets_schema.load(dotenv_values(path))


def residual_report(result):
    """Comment lines describing a calibration: fitted values, targets and relative residuals."""
    lines = [f"calibrated against {result.targets.frequency:g} Hz targets, tolerance {result.targets.tolerance:.0%}"]
    for name, residual in result.residuals.items():
        target = getattr(result.targets, name)
        lines.append(f"{name}: value={result.values[name]:.6e} target={target:.6e} residual={residual:+.4f}")
    lines.append(
        f"best_n_ietm: no_control={result.values['best_n_ietm_no_control']} "
        f"phase={result.values['best_n_ietm_controlled']}"
    )
    return lines
