"""Assembly of the compound-mirror noise budget over a frequency grid.

Without control the carrier sees the IETM coating plus the EETM coating and
IETM thermorefractive noise leaking through the anti-resonant cavity. With
control those two are removed by the loop and replaced by the quantum terms
of the carrier and the control sideband.
"""

import logging

import numpy as np

from models.noise_budget import NoiseBudget
from noise.quantum import quantum_noise
from noise.thermal import brownian_coating_asd, excess_thermal_components, mirror_layers
from utils.error_handlers import DomainError

logger = logging.getLogger(__name__)


def log_frequency_grid(f_min, f_max, points):
    """Logarithmically spaced frequencies from f_min to f_max inclusive."""
    if not 0 < f_min < f_max:
        raise DomainError(f"Need 0 < f_min < f_max, got {f_min!r}, {f_max!r}.")
    if points < 2:
        raise DomainError(f"Need at least 2 grid points, got {points!r}.")
    return np.logspace(np.log10(f_min), np.log10(f_max), int(points))


def assemble_budget(model, params, cavity, scheme, frequencies, config_hash = None, generated_at = None,
                    ietm_layers = None):
    """Per-source ASDs of the compound mirror at each frequency.

    `ietm_layers` overrides the IETM layer count (continuous values are allowed
    when rendering reflectivity sweeps).
    """
    if ietm_layers is None:
        ietm_layers = mirror_layers(cavity.ietm)
    f = np.atleast_1d(np.asarray(frequencies, dtype = float))
    zeros = np.zeros_like(f)
    sources = {
        "ietm_coating": np.asarray(brownian_coating_asd(model, ietm_layers, f)),
        "eetm_coating_sensed": zeros,
        "thermorefractive_sensed": zeros,
        "shot": zeros,
        "rp_carrier": zeros,
        "control_shot": zeros,
        "control_rp": zeros,
    }
    if scheme.controlled:
        if params is None:
            raise DomainError("A controlled scheme needs quantum parameters.")
        quantum = quantum_noise(cavity.ietm.r, params, 2.0 * np.pi * f, scheme)
        sources.update(
            shot = quantum.shot_asd,
            rp_carrier = quantum.rp_carrier_asd,
            control_shot = quantum.control_shot_asd,
            control_rp = quantum.control_rp_asd,
        )
    else:
        eetm, thermorefractive = excess_thermal_components(model, cavity, f)
        sources.update(eetm_coating_sensed = eetm, thermorefractive_sensed = thermorefractive)
    logger.debug("Assembled %s budget over %d frequencies", scheme.mode.value, f.size)
    return NoiseBudget(
        frequency_grid = f,
        sources = sources,
        scheme = scheme.mode.value,
        config_hash = config_hash,
        generated_at = generated_at,
    )


def coating_and_excess_asd(budget):
    """Figure of merit for layer optimization: IETM coating plus the scheme's excess noise.

    Carrier shot and radiation-pressure noise are not included.
    """
    names = ("ietm_coating", "eetm_coating_sensed", "thermorefractive_sensed", "control_shot", "control_rp")
    return np.sqrt(np.sum([np.square(budget.sources[name]) for name in names], axis = 0))
