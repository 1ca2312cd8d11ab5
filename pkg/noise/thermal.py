"""Parametric thermal noise of the end-mirror cavity.

Coating Brownian noise scales with the square root of the coating thickness;
substrate thermorefractive noise of the IETM is independent of the coating.
Both follow power laws in frequency anchored at the model's reference
frequency. Functions accept scalar or numpy frequency arguments.
"""

import numpy as np

from noise.optics import eetm_sensing_factor, layers_for_reflectivity
from utils.error_handlers import DomainError


def _check_frequency(f):
    f = np.asarray(f, dtype = float)
    if np.any(f <= 0):
        raise DomainError("Frequencies must be strictly positive.")
    return f


def _as_output(value):
    return float(value) if np.ndim(value) == 0 else value


def coating_thickness(model, n):
    """Relative coating thickness: n high-index layers plus n - 1 low-index layers."""
    if n < 0:
        raise DomainError(f"Layer count must be >= 0, got {n!r}.")
    return n + max(n - 1.0, 0.0) * model.layer_thickness_ratio


def mirror_layers(mirror):
    """Layer count of a mirror, inferred from its reflectivity when not given.

    r = 1 is rejected: no finite coating reaches it, so its Brownian noise is undefined.
    """
    if mirror.layers is not None:
        return mirror.layers
    if mirror.r >= 1.0:
        raise DomainError("A unit-reflectivity mirror has no finite coating, so its coating noise is undefined.")
    return layers_for_reflectivity(max(mirror.r, np.finfo(float).tiny))


# ========== SOURCES ==========
def brownian_coating_asd(model, n, f):
    """Coating Brownian ASD of an n-layer coating at frequency f."""
    f = _check_frequency(f)
    thickness = coating_thickness(model, n) / coating_thickness(model, 1)
    asd = model.brownian_ref_asd * np.sqrt(thickness) * (model.f_ref / f) ** model.brownian_slope
    return _as_output(asd)


def thermorefractive_asd(model, f):
    """IETM substrate thermorefractive ASD as seen by a directly reflected beam."""
    f = _check_frequency(f)
    return _as_output(model.thermorefractive_ref_asd * (model.f_ref / f) ** model.tr_slope)


# ========== COMBINATIONS ==========
def excess_thermal_components(model, cavity, f):
    """EETM coating and IETM thermorefractive noise as sensed by the anti-resonant carrier."""
    weight = eetm_sensing_factor(cavity.ietm.r, cavity.eetm.r)
    eetm = weight * np.asarray(brownian_coating_asd(model, mirror_layers(cavity.eetm), f))
    thermorefractive = weight * np.asarray(thermorefractive_asd(model, f))
    return _as_output(eetm), _as_output(thermorefractive)


def excess_thermal_asd(model, cavity, f):
    """Noise the end-mirror cavity adds on top of the IETM coating."""
    eetm, thermorefractive = excess_thermal_components(model, cavity, f)
    return _as_output(np.hypot(eetm, thermorefractive))


def total_thermal_asd(model, cavity, f):
    """IETM coating Brownian plus excess thermal noise, in quadrature."""
    ietm = brownian_coating_asd(model, mirror_layers(cavity.ietm), f)
    return _as_output(np.hypot(ietm, excess_thermal_asd(model, cavity, f)))
