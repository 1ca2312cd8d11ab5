"""Optimization, sweep and calibration result definitions.

Contains the records produced by the layer optimizer, the reflectivity
sweep and the thermal-coefficient calibration.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from models.noise_budget import NoiseBudget
from models.quantum import QuantumParams
from models.thermal_model import ThermalNoiseModel
from utils.constraints import (
    DEFAULT_LOSS_BUDGET,
    QUARTER_WAVE_THICKNESS_RATIO,
    SINGLE_MIRROR_LAYERS,
)


@dataclass(frozen = True)
class LayerCandidate:
    """One scanned IETM layer count; n_eetm and total_asd are None when infeasible."""
    n_ietm: int
    r_ietm: float
    n_eetm: Optional[int]
    total_asd: Optional[float]

    @property
    def feasible(self):
        return self.n_eetm is not None


@dataclass(frozen = True)
class OptimizationResult:
    """Model for a layer-split optimization.

    Attributes:
        best_n_ietm (int): Optimal IETM layer count.
        best_n_eetm (int): EETM layer count solved for it.
        total_asd_at_f (float): Coating plus excess noise of the optimum, m/rtHz.
        breakdown (NoiseBudget): Full budget of the optimum at the frequency.
        swept_curve (list): (r_ietm, total_asd) for every feasible candidate.
        candidates (list): Every scanned LayerCandidate, infeasible ones included.
        frequency (float): Evaluation frequency, Hz.
        loss_budget (float): Loss budget used.
        scheme (str): Control scheme used.
    """
    best_n_ietm: int
    best_n_eetm: int
    total_asd_at_f: float
    breakdown: NoiseBudget
    swept_curve: List[Tuple[float, float]]
    candidates: List[LayerCandidate]
    frequency: float
    loss_budget: float
    scheme: str

    @property
    def infeasible_layers(self):
        return [candidate.n_ietm for candidate in self.candidates if not candidate.feasible]


@dataclass(frozen = True)
class SweepPoint:
    """One point of a reflectivity sweep; total_asd is NaN when infeasible."""
    r_ietm: float
    n_eetm: Optional[int]
    total_asd: float
    feasible: bool


@dataclass(frozen = True)
class SweepTable:
    """Model for a family of reflectivity sweeps, one curve per loss budget."""
    grid: List[float]
    frequency: float
    scheme: str
    curves: Dict[float, List[SweepPoint]]


@dataclass(frozen = True)
class CalibrationTargets:
    """Scalar levels the thermal coefficients are fitted to.

    Attributes:
        total_asd_paper (float): Controlled total at `frequency` with `controlled_layers` IETM layers, m/rtHz.
        improvement_no_control (float): Single-mirror noise over the best uncontrolled split.
        control_vs_thermal_ratio (float): Excess thermal over excess control noise at `controlled_layers`.
        eetm_balance (float): Excess thermal over IETM coating noise at the uncontrolled optimum.
        eetm_balance_weight (float): Weight of the balance residual in the fit.
        controlled_improvement (float): Expected uncontrolled/controlled optimum ratio, checked only.
        tolerance (float): Allowed relative residual of the three primary targets.
    """
    total_asd_paper: float = 3.1e-21
    improvement_no_control: float = 3.0
    control_vs_thermal_ratio: float = 6.5
    eetm_balance: float = 1.0
    eetm_balance_weight: float = 0.5
    controlled_improvement: float = 2.5
    tolerance: float = 0.2
    frequency: float = 100.0
    loss_budget: float = DEFAULT_LOSS_BUDGET
    controlled_layers: int = 1
    single_mirror_layers: int = SINGLE_MIRROR_LAYERS
    layer_thickness_ratio: float = QUARTER_WAVE_THICKNESS_RATIO
    carrier_power: float = 1e5
    laser_angular_frequency: float = 1.7704e15


@dataclass(frozen = True)
class CalibrationResult:
    """Model for a fitted thermal/quantum configuration and its residual report."""
    model: ThermalNoiseModel
    params: QuantumParams
    values: Dict[str, float]
    residuals: Dict[str, float]
    targets: CalibrationTargets = field(default_factory = CalibrationTargets)

    @property
    def within_tolerance(self):
        primary = ("total_asd_paper", "improvement_no_control", "control_vs_thermal_ratio")
        return all(abs(self.residuals[name]) <= self.targets.tolerance for name in primary)
