"""Loss-constrained optimization of the IETM/EETM coating split.

optimize_layers scans integer IETM layer counts, pairs each with the thinnest
EETM coating that satisfies the loss budget, and picks the split with the
lowest coating-plus-excess noise. sweep_reflectivity renders the same figure
of merit over a continuous IETM reflectivity grid for several budgets.
calibrate fits the thermal coefficients and the mirror mass to scalar noise
levels with scipy's least_squares.
"""

import logging
import math

import numpy as np
from scipy.optimize import least_squares

from models.mirror import CavityConfig, MirrorSpec
from models.optimization_result import (
    CalibrationResult,
    CalibrationTargets,
    LayerCandidate,
    OptimizationResult,
    SweepPoint,
    SweepTable,
)
from models.quantum import ControlScheme, QuantumParams
from models.thermal_model import ThermalNoiseModel
from noise.budget import assemble_budget, coating_and_excess_asd
from noise.optics import effective_layers
from noise.thermal import brownian_coating_asd, excess_thermal_asd
from utils.constraints import (
    ControlMode,
    DEFAULT_MIRROR_LOSS,
    DEFAULT_SINGLE_MIRROR_LOSS,
    MAX_IETM_LAYERS,
)
from utils.error_handlers import CalibrationError, DomainError, InfeasibleBudgetError

logger = logging.getLogger(__name__)

# Calibration bounds: (brownian_ref_asd, thermorefractive_ref_asd, mirror_mass)
CALIBRATION_LOWER = (1e-24, 1e-24, 1.0)
CALIBRATION_UPPER = (1e-18, 1e-18, 100.0)
PRIMARY_TARGETS = ("total_asd_paper", "improvement_no_control", "control_vs_thermal_ratio")


def _check_inputs(budget, f):
    if budget < 0:
        raise DomainError(f"Loss budget must be >= 0, got {budget!r}.")
    if not f > 0:
        raise DomainError(f"Frequency must be > 0, got {f!r}.")


# ========== LAYER OPTIMIZATION ==========
def solve_cavity(ietm, budget, single_loss = DEFAULT_SINGLE_MIRROR_LOSS, mirror_loss = DEFAULT_MIRROR_LOSS):
    """Budget-satisfied cavity for `ietm` with the thinnest feasible EETM coating."""
    cavity = CavityConfig.solve(ietm, budget, single_loss, mirror_loss)
    logger.debug("Solved EETM with %d layers for r_IETM=%.6f (loss %.4e of %.4e allowed)",
                 cavity.eetm.layers, ietm.r, cavity.loss, cavity.allowed_loss)
    return cavity


def evaluate_split(model, params, cavity, f, scheme, ietm_layers = None):
    """Budget at one frequency and its coating-plus-excess figure of merit."""
    breakdown = assemble_budget(model, params, cavity, scheme, [f], ietm_layers = ietm_layers)
    return breakdown, float(coating_and_excess_asd(breakdown)[0])


def optimize_layers(model, params, budget, f, scheme,
                    single_loss = DEFAULT_SINGLE_MIRROR_LOSS,
                    mirror_loss = DEFAULT_MIRROR_LOSS,
                    max_ietm_layers = MAX_IETM_LAYERS,
                    ietm_loss = None):
    """Best IETM layer count under the loss budget at frequency f.

    The IETM carries `ietm_loss` (default `mirror_loss`); every EETM carries `mirror_loss`.
    """
    _check_inputs(budget, f)
    candidates = []
    breakdowns = {}
    for n_ietm in range(max_ietm_layers + 1):
        ietm = MirrorSpec.from_layers(n_ietm, mirror_loss if ietm_loss is None else ietm_loss)
        try:
            cavity = solve_cavity(ietm, budget, single_loss, mirror_loss)
        except InfeasibleBudgetError as err:
            logger.debug("IETM with %d layers is infeasible: %s", n_ietm, err)
            candidates.append(LayerCandidate(n_ietm, ietm.r, None, None))
            continue
        breakdowns[n_ietm], total = evaluate_split(model, params, cavity, f, scheme)
        candidates.append(LayerCandidate(n_ietm, ietm.r, cavity.eetm.layers, total))

    feasible = [candidate for candidate in candidates if candidate.feasible]
    if not feasible:
        raise InfeasibleBudgetError(f"No IETM layer count up to {max_ietm_layers} satisfies budget {budget!r}.")
    best = min(feasible, key = lambda candidate: (candidate.total_asd, candidate.n_ietm))
    logger.info("Optimum for %s at %.4g Hz, budget %.3g: N_IETM=%d, N_EETM=%d, %.4e m/rtHz",
                scheme.mode.value, f, budget, best.n_ietm, best.n_eetm, best.total_asd)
    return OptimizationResult(
        best_n_ietm = best.n_ietm,
        best_n_eetm = best.n_eetm,
        total_asd_at_f = best.total_asd,
        breakdown = breakdowns[best.n_ietm],
        swept_curve = [(candidate.r_ietm, candidate.total_asd) for candidate in feasible],
        candidates = candidates,
        frequency = f,
        loss_budget = budget,
        scheme = scheme.mode.value,
    )


# ========== REFLECTIVITY SWEEP ==========
def sweep_point(model, params, r_ietm, budget, f, scheme,
                single_loss = DEFAULT_SINGLE_MIRROR_LOSS, mirror_loss = DEFAULT_MIRROR_LOSS, ietm_loss = None):
    """Figure of merit at a continuous IETM reflectivity; NaN marks an infeasible budget."""
    ietm = MirrorSpec.from_reflectivity(r_ietm, mirror_loss if ietm_loss is None else ietm_loss)
    try:
        cavity = solve_cavity(ietm, budget, single_loss, mirror_loss)
    except InfeasibleBudgetError:
        return SweepPoint(r_ietm, None, math.nan, False)
    _, total = evaluate_split(model, params, cavity, f, scheme, ietm_layers = effective_layers(r_ietm))
    return SweepPoint(r_ietm, cavity.eetm.layers, total, True)


def sweep_reflectivity(model, params, budgets, f, scheme, grid,
                       single_loss = DEFAULT_SINGLE_MIRROR_LOSS, mirror_loss = DEFAULT_MIRROR_LOSS,
                       ietm_loss = None):
    """One curve of the figure of merit over `grid` per loss budget."""
    grid = [float(r) for r in grid]
    if not grid:
        raise DomainError("The reflectivity grid is empty.")
    if any(not 0.0 < r < 1.0 for r in grid):
        raise DomainError("Grid reflectivities must lie in (0, 1).")
    curves = {}
    for budget in budgets:
        _check_inputs(budget, f)
        curves[float(budget)] = [
            sweep_point(model, params, r, budget, f, scheme, single_loss, mirror_loss, ietm_loss) for r in grid
        ]
    return SweepTable(grid = grid, frequency = f, scheme = scheme.mode.value, curves = curves)


# ========== CALIBRATION ==========
def calibration_measurements(model, params, targets, include_checks = False):
    """The quantities the calibration targets refer to, for a given model."""
    f = targets.frequency
    controlled = ControlScheme(ControlMode.PHASE_QUADRATURE)
    ietm = MirrorSpec.from_layers(targets.controlled_layers)
    cavity = solve_cavity(ietm, targets.loss_budget)
    breakdown, controlled_total = evaluate_split(model, params, cavity, f, controlled)
    point = breakdown.at(0)
    excess_control = math.hypot(point["control_shot"], point["control_rp"])

    uncontrolled = optimize_layers(model, params, targets.loss_budget, f, ControlScheme())
    best = uncontrolled.breakdown.at(0)
    excess_best = math.hypot(best["eetm_coating_sensed"], best["thermorefractive_sensed"])
    single = brownian_coating_asd(model, targets.single_mirror_layers, f)

    values = {
        "total_asd_paper": controlled_total,
        "improvement_no_control": single / uncontrolled.total_asd_at_f,
        "control_vs_thermal_ratio": excess_thermal_asd(model, cavity, f) / excess_control,
        "eetm_balance": excess_best / best["ietm_coating"] if best["ietm_coating"] > 0 else math.inf,
    }
    if include_checks:
        controlled_best = optimize_layers(model, params, targets.loss_budget, f, controlled)
        values["controlled_improvement"] = uncontrolled.total_asd_at_f / controlled_best.total_asd_at_f
        values["best_n_ietm_no_control"] = uncontrolled.best_n_ietm
        values["best_n_ietm_controlled"] = controlled_best.best_n_ietm
    return values


def _calibrated_pair(x, targets):
    brownian, thermorefractive, mass = np.exp(x)
    model = ThermalNoiseModel(
        brownian_ref_asd = float(brownian),
        thermorefractive_ref_asd = float(thermorefractive),
        f_ref = targets.frequency,
        layer_thickness_ratio = targets.layer_thickness_ratio,
    )
    params = QuantumParams(
        carrier_power_i0 = targets.carrier_power,
        laser_angular_frequency_w0 = targets.laser_angular_frequency,
        mirror_mass_m = float(mass),
    )
    return model, params


def _log_residual(value, target):
    return math.log(min(max(value, 1e-300), 1e300) / target)


def calibrate(targets = None):
    """Fit brownian_ref_asd, thermorefractive_ref_asd and the mirror mass to the targets.

    Residuals are logarithmic; the EETM balance statement enters with a reduced
    weight. Carrier power stays at the target's value since the minimized control
    noise does not depend on it. Raises CalibrationError when a primary target
    misses its tolerance.
    """
    targets = targets or CalibrationTargets()
    if any(getattr(targets, name) <= 0 for name in PRIMARY_TARGETS + ("eetm_balance",)):
        raise DomainError("Calibration targets must be positive.")

    def residuals(x):
        values = calibration_measurements(*_calibrated_pair(x, targets), targets)
        primary = [_log_residual(values[name], getattr(targets, name)) for name in PRIMARY_TARGETS]
        balance = targets.eetm_balance_weight * _log_residual(values["eetm_balance"], targets.eetm_balance)
        return np.array(primary + [balance])

    initial = np.log([targets.total_asd_paper, 7.0 * targets.total_asd_paper, 40.0])
    fit = least_squares(
        residuals,
        initial,
        bounds = (np.log(CALIBRATION_LOWER), np.log(CALIBRATION_UPPER)),
        xtol = 1e-12,
        ftol = 1e-12,
        gtol = 1e-12,
    )
    model, params = _calibrated_pair(fit.x, targets)
    values = calibration_measurements(model, params, targets, include_checks = True)
    relative = {
        name: values[name] / getattr(targets, name) - 1.0
        for name in PRIMARY_TARGETS + ("eetm_balance", "controlled_improvement")
    }
    logger.info("Calibration finished (%s): residuals %s", fit.message, relative)
    result = CalibrationResult(model = model, params = params, values = values, residuals = relative, targets = targets)
    if not result.within_tolerance:
        raise CalibrationError(
            f"Calibration missed the {targets.tolerance:.0%} tolerance on a primary target.",
            residuals = relative,
        )
    return result
