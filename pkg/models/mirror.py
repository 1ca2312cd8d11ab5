"""Mirror and end-mirror cavity model definitions.

Contains the MirrorSpec class describing one coated mirror and the
CavityConfig class pairing the IETM and EETM under a loss budget.
"""

from dataclasses import dataclass
from typing import Optional

from noise.optics import (
    coating_reflectivity,
    compound_loss,
    compound_reflectivity,
    mirror_terms,
    solve_eetm_layers,
)
from utils.constraints import (
    DEFAULT_LOSS_BUDGET,
    DEFAULT_MIRROR_LOSS,
    DEFAULT_SINGLE_MIRROR_LOSS,
    ENERGY_TOLERANCE,
)
from utils.error_handlers import DomainError


@dataclass(frozen = True)
class MirrorSpec:
    """Model for one mirror.

    Attributes:
        r (float): Amplitude reflectivity in [0, 1].
        t (float): Amplitude transmissivity in [0, 1].
        loss (float): Power loss fraction in [0, 1).
        layers (int | None): Number of high-index layers, when the mirror is a coating stack.

    Constraints:
        - r^2 + t^2 + loss = 1 within 1e-12.
        - When layers is set, r equals coating_reflectivity(layers).
    """
    r: float
    t: float
    loss: float
    layers: Optional[int] = None

    def __post_init__(self):
        for name in ("r", "t"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"Mirror {name} must be in [0, 1], got {value!r}.")
        if not 0.0 <= self.loss < 1.0:
            raise DomainError(f"Mirror loss must be in [0, 1), got {self.loss!r}.")
        if abs(self.energy_residual) >= ENERGY_TOLERANCE:
            raise DomainError(f"Energy is not conserved: r^2 + t^2 + loss - 1 = {self.energy_residual:.3e}.")
        if self.layers is not None and self.r != coating_reflectivity(self.layers):
            raise DomainError(f"Reflectivity {self.r!r} does not match a {self.layers}-layer coating.")

    @property
    def energy_residual(self):
        return self.r * self.r + self.t * self.t + self.loss - 1.0

    @classmethod
    def from_layers(cls, layers, loss = DEFAULT_MIRROR_LOSS):
        """Build a coated mirror from its tantala layer count."""
        r = coating_reflectivity(layers)
        t, loss = mirror_terms(r, loss)
        return cls(r = r, t = t, loss = loss, layers = int(layers))

    @classmethod
    def from_reflectivity(cls, r, loss = DEFAULT_MIRROR_LOSS):
        """Build a mirror from its amplitude reflectivity alone."""
        t, loss = mirror_terms(r, loss)
        return cls(r = r, t = t, loss = loss)


@dataclass(frozen = True)
class CavityConfig:
    """Model for the anti-resonant end-mirror cavity.

    Attributes:
        ietm (MirrorSpec): Input mirror of the end-mirror cavity.
        eetm (MirrorSpec): End mirror of the end-mirror cavity.
        loss_budget (float): Allowed fractional excess of compound loss over a single mirror (0.5 = 50% more).
        reference_single_mirror_loss (float): Loss of the single high-reflective mirror being replaced.
    """
    ietm: MirrorSpec
    eetm: MirrorSpec
    loss_budget: float = DEFAULT_LOSS_BUDGET
    reference_single_mirror_loss: float = DEFAULT_SINGLE_MIRROR_LOSS

    def __post_init__(self):
        if self.loss_budget < 0:
            raise DomainError(f"Loss budget must be >= 0, got {self.loss_budget!r}.")
        if not 0.0 <= self.reference_single_mirror_loss < 1.0:
            raise DomainError("Reference single-mirror loss must be in [0, 1).")

    @property
    def reflectivity(self):
        return compound_reflectivity(self.ietm.r, self.eetm.r)

    @property
    def loss(self):
        return compound_loss(self.ietm, self.eetm)

    @property
    def allowed_loss(self):
        return (1.0 + self.loss_budget) * self.reference_single_mirror_loss

    @property
    def budget_satisfied(self):
        return self.loss <= self.allowed_loss

    @classmethod
    def solve(cls, ietm, loss_budget = DEFAULT_LOSS_BUDGET,
              reference_single_mirror_loss = DEFAULT_SINGLE_MIRROR_LOSS,
              mirror_loss = DEFAULT_MIRROR_LOSS):
        """Pair `ietm` with the thinnest EETM coating that satisfies the loss budget."""
        n_e = solve_eetm_layers(ietm.r, loss_budget, reference_single_mirror_loss, mirror_loss, ietm_loss = ietm.loss)
        return cls(
            ietm = ietm,
            eetm = MirrorSpec.from_layers(n_e, mirror_loss),
            loss_budget = loss_budget,
            reference_single_mirror_loss = reference_single_mirror_loss,
        )
