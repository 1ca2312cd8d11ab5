"""Quantum noise of the sideband-controlled end-mirror cavity.

The carrier's phase-quadrature output after feeding back the control sideband
is a sum of four unit-variance vacuum terms (carrier a1/a2, sideband a1/a2)
and the IETM displacement signal. Referring each vacuum term to displacement
through the signal transfer sqrt(2K) r~ / x_SQL gives the noise budget.

Phase-quadrature control feeds back b2 of the sideband; variational readout
feeds back b1 sin(zeta) + b2 cos(zeta), which lets the sideband radiation
pressure term be cancelled. Both share one code path, with tan(zeta) = 0 for
phase control.

Vacuum fields are uncorrelated and unsqueezed; optical losses and EETM
transmission are ignored here.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import constants

from noise.optics import thermorefractive_sensing_ratio
from utils.constraints import ControlMode, OPTIMIZED_RATIO
from utils.error_handlers import DomainError, SingularConfigurationError


@dataclass(frozen = True)
class VacuumCoefficients:
    """Coefficients of the vacuum quadratures in the controlled phase-quadrature output."""
    a2_carrier: Any
    a1_carrier: Any
    a2_sideband: Any
    a1_sideband: Any


@dataclass(frozen = True)
class QuantumNoise:
    """Displacement-referred quantum noise ASDs (m/rtHz)."""
    total_asd: Any
    shot_asd: Any
    rp_carrier_asd: Any
    control_shot_asd: Any
    control_rp_asd: Any
    sideband_ratio: Any
    zeta: Any = 0.0

    @property
    def excess_control_asd(self):
        return np.hypot(self.control_shot_asd, self.control_rp_asd)


def _check_positive(name, value):
    value = np.asarray(value, dtype = float)
    if np.any(value <= 0):
        raise DomainError(f"{name} must be strictly positive.")
    return value


def _check_open_reflectivity(r):
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"IETM reflectivity must be in [0, 1], got {r!r}.")
    if r == 0.0:
        raise SingularConfigurationError("r = 0: the carrier carries no IETM signal.")
    if r == 1.0:
        raise SingularConfigurationError("r = 1: the control sideband does not couple to the cavity.")


def _squeeze(value):
    return float(value) if np.ndim(value) == 0 else value


# ========== DEFINITIONS ==========
def kappa(params, omega):
    """Optomechanical coupling K = 8 I0 w0 / (m W^2 c^2)."""
    omega = _check_positive("Measurement angular frequency", omega)
    value = 8.0 * params.carrier_power_i0 * params.laser_angular_frequency_w0 / (
        params.mirror_mass_m * omega ** 2 * params.light_speed_c ** 2
    )
    return _squeeze(value)


def x_sql(m, omega, hbar = constants.hbar):
    """Free-mass standard quantum limit sqrt(2 hbar / (m W^2))."""
    m = _check_positive("Mirror mass", m)
    omega = _check_positive("Measurement angular frequency", omega)
    return _squeeze(np.sqrt(2.0 * hbar / (m * omega ** 2)))


def r_tilde(r):
    """Effective coupling 4r / (1 + r)^2 of the compound mirror."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"Reflectivity must be in [0, 1], got {r!r}.")
    return 4.0 * r / (1.0 + r) ** 2


def control_coupling(r):
    """Relative weight ((1 - r)/(1 + r))^2 of the sideband feedback, the inverse square of the sideband gain."""
    return thermorefractive_sensing_ratio(r) ** -2


# ========== VACUUM BUDGET ==========
def optimal_sideband_ratio(r, kappa_val, tan_zeta = 0.0):
    """A1s/A1c minimizing the control terms for a given readout angle."""
    coupling = control_coupling(r)
    squared = coupling * np.sqrt(1.0 + tan_zeta ** 2) / (r_tilde(r) * np.asarray(kappa_val))
    return _squeeze(np.sqrt(squared))


def _cancelling_tan_zeta(r, kappa_val, ratio):
    return r_tilde(r) * kappa_val * (ratio * thermorefractive_sensing_ratio(r)) ** 2


def vacuum_coefficients(r, kappa_val, ratio, tan_zeta = 0.0):
    """Coefficients of a2c, a1c, a2s, a1s in the controlled output.

    a1s is written as (c / ratio) (tan(zeta) - tan(zeta_cancel)), so it is exactly
    zero when tan(zeta) comes from variational_tan_zeta.
    """
    rt = r_tilde(r)
    coupling = control_coupling(r)
    kappa_val = np.asarray(kappa_val, dtype = float)
    feedback = coupling / ratio
    return VacuumCoefficients(
        a2_carrier = np.ones_like(kappa_val),
        a1_carrier = -rt * kappa_val,
        a2_sideband = feedback * np.ones_like(kappa_val),
        a1_sideband = feedback * (tan_zeta - _cancelling_tan_zeta(r, kappa_val, ratio)),
    )


def _quantum_noise(r, params, omega, ratio, tan_zeta, zeta):
    _check_open_reflectivity(r)
    kappa_val = np.asarray(kappa(params, omega))
    if isinstance(ratio, str):
        if ratio != OPTIMIZED_RATIO:
            raise DomainError(f"Unknown sideband ratio marker {ratio!r}.")
        ratio = np.asarray(optimal_sideband_ratio(r, kappa_val, tan_zeta))
    else:
        ratio = _check_positive("Sideband ratio", ratio)
    coefficients = vacuum_coefficients(r, kappa_val, ratio, tan_zeta)
    scale = np.asarray(x_sql(params.mirror_mass_m, omega, params.hbar)) / (np.sqrt(2.0 * kappa_val) * r_tilde(r))
    shot = scale * np.abs(coefficients.a2_carrier)
    rp_carrier = scale * np.abs(coefficients.a1_carrier)
    control_shot = scale * np.abs(coefficients.a2_sideband)
    control_rp = scale * np.abs(coefficients.a1_sideband)
    total = np.sqrt(shot ** 2 + rp_carrier ** 2 + control_shot ** 2 + control_rp ** 2)
    return QuantumNoise(
        total_asd = _squeeze(total),
        shot_asd = _squeeze(shot),
        rp_carrier_asd = _squeeze(rp_carrier),
        control_shot_asd = _squeeze(control_shot),
        control_rp_asd = _squeeze(control_rp),
        sideband_ratio = _squeeze(ratio),
        zeta = _squeeze(zeta),
    )


def quantum_noise_phase_control(r, params, omega, ratio = OPTIMIZED_RATIO):
    """Quantum noise with the sideband phase quadrature fed back to the EETM."""
    return _quantum_noise(r, params, omega, ratio, tan_zeta = 0.0, zeta = 0.0)


def min_quantum_noise_asd(r, params, omega):
    """Closed-form quantum noise with the control terms minimized at each frequency."""
    _check_open_reflectivity(r)
    kappa_val = np.asarray(kappa(params, omega))
    rt = r_tilde(r)
    scale = np.asarray(x_sql(params.mirror_mass_m, omega, params.hbar)) / (np.sqrt(2.0 * kappa_val) * rt)
    return _squeeze(scale * np.sqrt(1.0 + (rt * kappa_val) ** 2 + 2.0 * rt * kappa_val * control_coupling(r)))


def min_excess_control_asd(r, m, omega, hbar = constants.hbar):
    """Quantum limit of excess control noise, x_SQL (1 - r) / (2 sqrt(r))."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"Reflectivity must be in [0, 1], got {r!r}.")
    if r == 0.0:
        raise SingularConfigurationError("The control-noise limit diverges at r = 0.")
    return _squeeze(np.asarray(x_sql(m, omega, hbar)) * (1.0 - r) / (2.0 * np.sqrt(r)))


# ========== VARIATIONAL READOUT ==========
def variational_tan_zeta(r, kappa_val, ratio):
    """tan(zeta) that cancels the sideband radiation pressure term."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"Reflectivity must be in [0, 1], got {r!r}.")
    kappa_val = np.asarray(kappa_val, dtype = float)
    if np.any(kappa_val < 0):
        raise DomainError("K must be >= 0.")
    ratio = _check_positive("Sideband ratio", ratio)
    return _squeeze(_cancelling_tan_zeta(r, kappa_val, ratio))


def variational_zeta(r, kappa_val, ratio):
    """Readout angle cancelling back-action of the control sideband."""
    return _squeeze(np.arctan(variational_tan_zeta(r, kappa_val, ratio)))


def quantum_noise_variational(r, params, omega, scheme):
    """Quantum noise with the rotated sideband quadrature fed back to the EETM.

    VARIATIONAL_FIXED uses the scheme's zeta at every frequency;
    VARIATIONAL_IDEAL re-solves zeta at each frequency from K(omega).
    """
    if scheme.mode is ControlMode.VARIATIONAL_FIXED:
        tan_zeta = float(np.tan(scheme.zeta))
        return _quantum_noise(r, params, omega, scheme.sideband_amplitude_ratio, tan_zeta, scheme.zeta)
    if scheme.mode is ControlMode.VARIATIONAL_IDEAL:
        _check_open_reflectivity(r)
        tan_zeta = np.asarray(variational_tan_zeta(r, kappa(params, omega), scheme.sideband_amplitude_ratio))
        return _quantum_noise(r, params, omega, scheme.sideband_amplitude_ratio, tan_zeta, np.arctan(tan_zeta))
    raise DomainError(f"Scheme {scheme.mode.value!r} is not a variational readout.")


def quantum_noise(r, params, omega, scheme):
    """Dispatch on the control scheme; returns None without control."""
    if scheme.mode is ControlMode.NO_CONTROL:
        return None
    if scheme.mode is ControlMode.PHASE_QUADRATURE:
        return quantum_noise_phase_control(r, params, omega, scheme.sideband_amplitude_ratio)
    return quantum_noise_variational(r, params, omega, scheme)
