"""Amplitude optics of the anti-resonant end-mirror cavity.

Compound reflectivity, the coating-layer reflectivity law, leakage sensing
factors and the loss budget of the IETM/EETM pair. Everything here is a pure
function of its arguments; mirrors are passed as any object exposing
`r`, `t` and `loss` (normally `models.mirror.MirrorSpec`).
"""

import logging
import math

import numpy as np

from utils.constraints import (
    COATING_BASE,
    COATING_PREFACTOR,
    EXACT_LOW_N_REFLECTIVITY,
    FIRST_FORMULA_LAYER,
    MAX_LAYER_SCAN,
    DEFAULT_MIRROR_LOSS,
)
from utils.error_handlers import DomainError, InfeasibleBudgetError, SingularConfigurationError

logger = logging.getLogger(__name__)


def _check_unit_interval(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must be in [0, 1], got {value!r}.")


# ========== COMPOUND MIRROR ==========
def compound_reflectivity(r_i, r_e):
    """Lossless reflectivity of the anti-resonant IETM/EETM pair."""
    _check_unit_interval("r_i", r_i)
    _check_unit_interval("r_e", r_e)
    return (r_i + r_e) / (1.0 + r_i * r_e)


# ========== COATING LAW ==========
def coating_reflectivity(n):
    """Amplitude reflectivity of a silica/tantala stack with `n` tantala layers.

    Exact values are used for n <= 3 (n = 0 is the bare substrate); the
    approximate law sqrt(1 - 2.8 * 0.49^n) governs from n = 4 on.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"Layer count must be a nonnegative integer, got {n!r}.")
    n = int(n)
    if n < FIRST_FORMULA_LAYER:
        return EXACT_LOW_N_REFLECTIVITY[n]
    return math.sqrt(1.0 - COATING_PREFACTOR * COATING_BASE ** n)


def layers_for_reflectivity(r_target):
    """Smallest layer count whose reflectivity reaches `r_target`."""
    if not 0.0 < r_target < 1.0:
        raise DomainError(f"Target reflectivity must be in (0, 1), got {r_target!r}.")
    for n in range(MAX_LAYER_SCAN + 1):
        if coating_reflectivity(n) >= r_target:
            return n
    raise DomainError(
        f"Reflectivity {r_target!r} is not reached within {MAX_LAYER_SCAN} layers."
    )


def effective_layers(r):
    """Continuous layer count for a reflectivity, used for rendering r-sweeps.

    Piecewise linear through the exact table up to n = 4, then the analytic
    inverse of the coating law. Reflectivities below the bare substrate map to 0.
    """
    _check_unit_interval("r", r)
    if r >= 1.0:
        raise DomainError("A unit reflectivity needs infinitely many layers.")
    table_n = np.arange(FIRST_FORMULA_LAYER + 1)
    table_r = np.array([coating_reflectivity(n) for n in table_n])
    if r <= table_r[-1]:
        return float(np.interp(r, table_r, table_n))
    return math.log((1.0 - r * r) / COATING_PREFACTOR) / math.log(COATING_BASE)


# ========== MIRROR ENERGY BOOKKEEPING ==========
def mirror_terms(r, loss):
    """Transmissivity and effective loss of a mirror with reflectivity `r`.

    The coating law is lossless, so a requested loss larger than the power
    left after reflection is capped at 1 - r^2 (the mirror then transmits nothing).
    """
    _check_unit_interval("r", r)
    if not 0.0 <= loss < 1.0:
        raise DomainError(f"Power loss must be in [0, 1), got {loss!r}.")
    available = 1.0 - r * r
    if loss > available:
        logger.debug("Capping loss %.3e at available power %.3e for r=%.15f", loss, available, r)
        return 0.0, available
    return math.sqrt(available - loss), loss


# ========== SENSING FACTORS ==========
def eetm_sensing_factor(r_i, r_e):
    """Weight of EETM displacement in the anti-resonant carrier reflection."""
    _check_unit_interval("r_i", r_i)
    _check_unit_interval("r_e", r_e)
    return (1.0 - r_i * r_i) / (1.0 + r_i * r_e) ** 2


def thermorefractive_sensing_ratio(r_i):
    """How much more the resonant sideband senses the cavity than the carrier."""
    _check_unit_interval("r_i", r_i)
    if r_i == 1.0:
        raise SingularConfigurationError("The sideband/carrier sensing ratio diverges at r_i = 1.")
    return (1.0 + r_i) / (1.0 - r_i)


# ========== LOSS BUDGET ==========
def _compound_loss(r_i, t_i, loss_i, r_e, t_e, loss_e):
    buildup = (t_i / (1.0 + r_i * r_e)) ** 2
    return loss_i + buildup * (loss_e + t_e * t_e)


def compound_loss(ietm, eetm):
    """Power lost by the compound mirror: IETM loss plus leaked EETM loss and transmission."""
    return _compound_loss(ietm.r, ietm.t, ietm.loss, eetm.r, eetm.t, eetm.loss)


def solve_eetm_layers(r_i, budget, single_loss, mirror_loss=DEFAULT_MIRROR_LOSS, ietm_loss=None):
    """Fewest EETM layers keeping the compound loss within (1 + budget) * single_loss.

    Both mirrors carry `mirror_loss` unless `ietm_loss` is given.
    Raises InfeasibleBudgetError when no count up to the scan ceiling works.
    """
    if budget < 0:
        raise DomainError(f"Loss budget must be >= 0, got {budget!r}.")
    allowed = (1.0 + budget) * single_loss
    t_i, loss_i = mirror_terms(r_i, mirror_loss if ietm_loss is None else ietm_loss)
    best_loss = math.inf
    for n_e in range(MAX_LAYER_SCAN + 1):
        r_e = coating_reflectivity(n_e)
        t_e, loss_e = mirror_terms(r_e, mirror_loss)
        loss = _compound_loss(r_i, t_i, loss_i, r_e, t_e, loss_e)
        if loss <= allowed:
            return n_e
        best_loss = min(best_loss, loss)
    raise InfeasibleBudgetError(
        f"No EETM up to {MAX_LAYER_SCAN} layers keeps the loss of r_i={r_i:.6g} "
        f"within {allowed:.4e} (best {best_loss:.4e}).",
        best_loss = best_loss,
    )
