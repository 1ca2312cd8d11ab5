"""Utility module for reusable Marshmallow validators.

This module centralizes range checks so that config, targets and CLI
inputs are validated the same way in every schema.
"""

from marshmallow import ValidationError, validate

from utils.constraints import OPTIMIZED_RATIO

# ========== Reflectivity / loss validation ==========
reflectivity_validators = [
    validate.Range(min = 0.0, max = 1.0, error = "Amplitude reflectivity must be in [0, 1].")
]

loss_validators = [
    validate.Range(min = 0.0, max = 1.0, max_inclusive = False, error = "Power loss must be in [0, 1).")
]

layer_validators = [
    validate.Range(min = 0, max = 200, error = "Layer count must be a nonnegative integer (at most 200).")
]

budget_validators = [
    validate.Range(min = 0.0, error = "Loss budget must be >= 0.")
]

# ========== Noise model validation ==========
asd_validators = [
    validate.Range(min = 0.0, error = "Amplitude spectral densities must be >= 0.")
]

slope_validators = [
    validate.Range(min = 0.0, error = "Frequency slopes must be >= 0.")
]

positive_validators = [
    validate.Range(min = 0.0, min_inclusive = False, error = "Value must be strictly positive.")
]


# ========== Sideband ratio validation ==========
def validate_ratio(value):
    """Accept a positive number or the 'optimized' marker."""
    if value == OPTIMIZED_RATIO:
        return
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"Sideband ratio must be a positive number or '{OPTIMIZED_RATIO}'.")
    if not number > 0:
        raise ValidationError("Sideband ratio must be strictly positive.")


def parse_ratio(value):
    """Return the 'optimized' marker or the ratio as a float."""
    validate_ratio(value)
    return OPTIMIZED_RATIO if value == OPTIMIZED_RATIO else float(value)
