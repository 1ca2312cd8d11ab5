"""Quantum-noise parameter and control scheme definitions.

Contains QuantumParams (carrier power, laser frequency, mirror mass and the
physical constants) and ControlScheme (how the end-mirror cavity is read out
and controlled).
"""

import math
from dataclasses import dataclass, field
from typing import Union

from scipy import constants

from utils.constraints import ControlMode, OPTIMIZED_RATIO
from utils.error_handlers import DomainError


@dataclass(frozen = True)
class QuantumParams:
    """Model for the quantum-noise inputs.

    Attributes:
        carrier_power_i0 (float): Carrier power on the arm side of the IETM, W.
        laser_angular_frequency_w0 (float): Laser angular frequency, rad/s.
        mirror_mass_m (float): Mass of the IETM, kg.
        hbar (float): Reduced Planck constant, J s (CODATA).
        light_speed_c (float): Speed of light, m/s (CODATA).
    """
    carrier_power_i0: float
    laser_angular_frequency_w0: float
    mirror_mass_m: float
    hbar: float = field(default = constants.hbar)
    light_speed_c: float = field(default = constants.c)

    def __post_init__(self):
        for name in ("carrier_power_i0", "laser_angular_frequency_w0", "mirror_mass_m", "hbar", "light_speed_c"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be strictly positive, got {getattr(self, name)!r}.")


@dataclass(frozen = True)
class ControlScheme:
    """Model for the readout/control mode of the end-mirror cavity.

    Attributes:
        mode (ControlMode): NO_CONTROL, PHASE_QUADRATURE, VARIATIONAL_FIXED or VARIATIONAL_IDEAL.
        sideband_amplitude_ratio (float | str): A1s/A1c, or "optimized".
        zeta (float): Readout angle in radians, used by VARIATIONAL_FIXED only.

    Constraints:
        - zeta in (-pi/2, pi/2).
        - VARIATIONAL_IDEAL needs a finite ratio (no optimum exists).
    """
    mode: ControlMode = ControlMode.NO_CONTROL
    sideband_amplitude_ratio: Union[float, str] = OPTIMIZED_RATIO
    zeta: float = 0.0

    def __post_init__(self):
        ratio = self.sideband_amplitude_ratio
        if ratio != OPTIMIZED_RATIO and not (isinstance(ratio, (int, float)) and ratio > 0):
            raise DomainError(f"Sideband ratio must be > 0 or '{OPTIMIZED_RATIO}', got {ratio!r}.")
        if not -math.pi / 2 < self.zeta < math.pi / 2:
            raise DomainError(f"Readout angle must be in (-pi/2, pi/2), got {self.zeta!r}.")
        if self.mode is ControlMode.VARIATIONAL_IDEAL and ratio == OPTIMIZED_RATIO:
            raise DomainError("Ideal variational readout has no optimal sideband ratio; give a number.")

    @property
    def controlled(self):
        return self.mode is not ControlMode.NO_CONTROL

    @property
    def optimized(self):
        return self.sideband_amplitude_ratio == OPTIMIZED_RATIO
