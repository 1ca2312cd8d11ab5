"""Noise configuration model definition.

Contains the NoiseConfig class: everything a configuration file describes,
i.e. the two mirrors, the loss budget, the thermal model, the quantum
parameters and the control scheme.
"""

from dataclasses import dataclass
from typing import Optional

from models.mirror import CavityConfig, MirrorSpec
from models.quantum import ControlScheme, QuantumParams
from models.thermal_model import ThermalNoiseModel
from utils.constraints import DEFAULT_LOSS_BUDGET, DEFAULT_MIRROR_LOSS, DEFAULT_SINGLE_MIRROR_LOSS


@dataclass(frozen = True)
class NoiseConfig:
    """Model for a parsed configuration file.

    Attributes:
        ietm (MirrorSpec): Input mirror.
        eetm (MirrorSpec | None): End mirror; None means "solve it from the loss budget".
        model (ThermalNoiseModel): Thermal noise coefficients.
        params (QuantumParams | None): Quantum inputs; required by controlled schemes.
        scheme (ControlScheme): Readout/control mode.
        loss_budget (float): Allowed fractional excess of compound loss.
        reference_single_mirror_loss (float): Loss of the single mirror being replaced.
        eetm_loss (float): Per-mirror loss used when the EETM is solved.
    """
    ietm: MirrorSpec
    model: ThermalNoiseModel
    scheme: ControlScheme = ControlScheme()
    eetm: Optional[MirrorSpec] = None
    params: Optional[QuantumParams] = None
    loss_budget: float = DEFAULT_LOSS_BUDGET
    reference_single_mirror_loss: float = DEFAULT_SINGLE_MIRROR_LOSS
    eetm_loss: float = DEFAULT_MIRROR_LOSS

    def cavity(self):
        """The configured cavity, solving the EETM when it is not given."""
        if self.eetm is None:
            return CavityConfig.solve(self.ietm, self.loss_budget, self.reference_single_mirror_loss, self.eetm_loss)
        return CavityConfig(self.ietm, self.eetm, self.loss_budget, self.reference_single_mirror_loss)

    def with_scheme(self, scheme):
        return NoiseConfig(
            ietm = self.ietm,
            model = self.model,
            scheme = scheme,
            eetm = self.eetm,
            params = self.params,
            loss_budget = self.loss_budget,
            reference_single_mirror_loss = self.reference_single_mirror_loss,
            eetm_loss = self.eetm_loss,
        )

    def flat(self):
        """Field-name -> value mapping in the shape the config schema dumps."""
        data = {
            "ietm_layers": self.ietm.layers,
            "ietm_r": None if self.ietm.layers is not None else self.ietm.r,
            "ietm_loss": self.ietm.loss,
            "eetm_layers": None,
            "eetm_r": None,
            "eetm_loss": self.eetm_loss if self.eetm is None else self.eetm.loss,
            "loss_budget": self.loss_budget,
            "reference_single_mirror_loss": self.reference_single_mirror_loss,
            "brownian_ref_asd": self.model.brownian_ref_asd,
            "f_ref": self.model.f_ref,
            "brownian_slope": self.model.brownian_slope,
            "thermorefractive_ref_asd": self.model.thermorefractive_ref_asd,
            "tr_slope": self.model.tr_slope,
            "layer_thickness_ratio": self.model.layer_thickness_ratio,
            "scheme": self.scheme.mode,
            "sideband_ratio": self.scheme.sideband_amplitude_ratio,
            "zeta": self.scheme.zeta,
        }
        if self.eetm is not None:
            data["eetm_layers"] = self.eetm.layers
            data["eetm_r"] = None if self.eetm.layers is not None else self.eetm.r
        if self.params is not None:
            data.update(
                carrier_power = self.params.carrier_power_i0,
                laser_angular_frequency = self.params.laser_angular_frequency_w0,
                mirror_mass = self.params.mirror_mass_m,
            )
        return {key: value for key, value in data.items() if value is not None}
