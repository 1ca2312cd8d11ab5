"""Thermal noise model definition.

Contains the ThermalNoiseModel class holding the reference levels and
frequency slopes of coating Brownian and substrate thermorefractive noise.
"""

from dataclasses import dataclass

from utils.error_handlers import DomainError


@dataclass(frozen = True)
class ThermalNoiseModel:
    """Model for parametric thermal noise.

    Attributes:
        brownian_ref_asd (float): ASD (m/rtHz) of a single-layer coating at f_ref.
        f_ref (float): Reference frequency in Hz.
        brownian_slope (float): Exponent p of the (f_ref/f)^p Brownian law.
        thermorefractive_ref_asd (float): ASD (m/rtHz) of IETM substrate thermorefractive noise at f_ref, bare reflection.
        tr_slope (float): Exponent of the thermorefractive frequency law.
        layer_thickness_ratio (float): Thickness of one low-index layer relative to one high-index layer.
    """
    brownian_ref_asd: float
    thermorefractive_ref_asd: float
    f_ref: float = 100.0
    brownian_slope: float = 0.5
    tr_slope: float = 0.5
    layer_thickness_ratio: float = 1.0

    def __post_init__(self):
        if self.brownian_ref_asd < 0 or self.thermorefractive_ref_asd < 0:
            raise DomainError("Reference ASDs must be >= 0.")
        if self.brownian_slope < 0 or self.tr_slope < 0:
            raise DomainError("Frequency slopes must be >= 0.")
        if not self.f_ref > 0:
            raise DomainError(f"Reference frequency must be > 0, got {self.f_ref!r}.")
        if self.layer_thickness_ratio < 0:
            raise DomainError("Layer thickness ratio must be >= 0.")
