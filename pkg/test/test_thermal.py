"""
Unit tests for the parametric thermal noise model and its combination into excess thermal noise.
"""

import math

import numpy as np
import pytest

from models.mirror import CavityConfig, MirrorSpec
from models.thermal_model import ThermalNoiseModel
from noise.optics import eetm_sensing_factor
from noise.thermal import (
    brownian_coating_asd,
    excess_thermal_asd,
    excess_thermal_components,
    thermorefractive_asd,
    total_thermal_asd,
)
from utils.error_handlers import DomainError

UNIT = ThermalNoiseModel(brownian_ref_asd = 1e-21, thermorefractive_ref_asd = 2e-21)


def cavity(n_ietm, n_eetm):
    return CavityConfig(MirrorSpec.from_layers(n_ietm), MirrorSpec.from_layers(n_eetm))


def test_brownian_anchors():
    """Test that a bare substrate has no coating noise and one layer hits the reference ASD."""
    assert brownian_coating_asd(UNIT, 0, 50.0) == 0.0
    assert brownian_coating_asd(UNIT, 1, 100.0) == pytest.approx(1e-21)


def test_brownian_thickness_ratio():
    """Test that 15 vs 2 layers scale by sqrt(29/3) with equal-thickness layers."""
    ratio = brownian_coating_asd(UNIT, 15, 30.0) / brownian_coating_asd(UNIT, 2, 30.0)
    assert ratio == pytest.approx(math.sqrt(29 / 3))
    assert ratio == pytest.approx(3.109, abs = 1e-3)


def test_brownian_low_index_layers_scale_thickness():
    """Test that low-index layers add thickness in proportion to the thickness ratio."""
    thick = ThermalNoiseModel(brownian_ref_asd = 1e-21, thermorefractive_ref_asd = 0.0, layer_thickness_ratio = 1.42)
    assert brownian_coating_asd(thick, 2, 100.0) == pytest.approx(1e-21 * math.sqrt(3.42))


def test_brownian_frequency_slope_and_vectorization():
    f = np.array([25.0, 100.0, 400.0])
    values = brownian_coating_asd(UNIT, 1, f)
    assert values == pytest.approx([2e-21, 1e-21, 0.5e-21])


@pytest.mark.parametrize("f", [0.0, -10.0])
def test_nonpositive_frequency_is_rejected(f):
    """Test that both thermal sources reject frequencies <= 0."""
    with pytest.raises(DomainError):
        brownian_coating_asd(UNIT, 1, f)
    with pytest.raises(DomainError):
        thermorefractive_asd(UNIT, f)


def test_thermorefractive_power_law():
    assert thermorefractive_asd(UNIT, 100.0) == 2e-21
    assert thermorefractive_asd(UNIT, 400.0) == pytest.approx(1e-21)


def test_excess_thermal_vanishes_without_leakage():
    """Test that a perfect IETM hides the EETM and substrate entirely."""
    perfect = CavityConfig(MirrorSpec(r = 1.0, t = 0.0, loss = 0.0), MirrorSpec.from_layers(10))
    assert excess_thermal_asd(UNIT, perfect, 100.0) == 0.0


def test_excess_thermal_zero_for_bare_eetm_and_no_thermorefractive():
    model = ThermalNoiseModel(brownian_ref_asd = 1e-21, thermorefractive_ref_asd = 0.0)
    assert excess_thermal_asd(model, cavity(2, 0), 100.0) == 0.0


def test_excess_thermal_is_quadrature_of_components():
    """
    Test that excess thermal noise is the quadrature sum of its two sensed parts.

    - Weights EETM coating and thermorefractive noise by the sensing factor.
    - Compares both the components and their quadrature sum.
    """
    config = cavity(2, 14)
    weight = eetm_sensing_factor(0.72, config.eetm.r)
    eetm = weight * brownian_coating_asd(UNIT, 14, 80.0)
    thermorefractive = weight * thermorefractive_asd(UNIT, 80.0)
    assert excess_thermal_components(UNIT, config, 80.0) == pytest.approx((eetm, thermorefractive), rel = 1e-14)
    assert excess_thermal_asd(UNIT, config, 80.0) == pytest.approx(math.hypot(eetm, thermorefractive), rel = 1e-12)


def test_excess_thermal_non_increasing_in_ietm_reflectivity():
    """Test that a more reflective IETM never lets more excess thermal noise through."""
    eetm = MirrorSpec.from_layers(14)
    values = [
        excess_thermal_asd(UNIT, CavityConfig(MirrorSpec.from_reflectivity(r), eetm), 100.0)
        for r in np.linspace(0.05, 0.99, 40)
    ]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_total_thermal_examples():
    """
    Test the total thermal noise on three configurations.

    - A bare pair with no thermorefractive noise is silent.
    - A 3/13 split equals IETM coating and excess in quadrature.
    - A thick IETM with negligible excess is dominated by its own coating.
    """
    zero = ThermalNoiseModel(brownian_ref_asd = 1e-21, thermorefractive_ref_asd = 0.0)
    assert total_thermal_asd(zero, cavity(0, 0), 100.0) == 0.0

    config = cavity(3, 13)
    ietm = brownian_coating_asd(UNIT, 3, 100.0)
    expected = math.sqrt(ietm ** 2 + excess_thermal_asd(UNIT, config, 100.0) ** 2)
    assert total_thermal_asd(UNIT, config, 100.0) == pytest.approx(expected, rel = 1e-12)

    dominated = ThermalNoiseModel(brownian_ref_asd = 1e-21, thermorefractive_ref_asd = 1e-24)
    config = cavity(6, 10)
    assert total_thermal_asd(dominated, config, 100.0) == pytest.approx(brownian_coating_asd(dominated, 6, 100.0), rel = 1e-2)


def test_total_thermal_increasing_in_ietm_layers_at_fixed_excess():
    """Test that the IETM coating contribution grows with its layer count."""
    values = [total_thermal_asd(UNIT, cavity(n, 0), 100.0) for n in range(0, 8)]
    excess = [excess_thermal_asd(UNIT, cavity(n, 0), 100.0) for n in range(0, 8)]
    ietm_only = [math.sqrt(max(total ** 2 - extra ** 2, 0.0)) for total, extra in zip(values, excess)]
    assert all(b > a for a, b in zip(ietm_only, ietm_only[1:]))


def test_asds_scale_linearly_with_coefficients():
    """Test that doubling both reference levels doubles the total."""
    config = cavity(2, 14)
    doubled = ThermalNoiseModel(brownian_ref_asd = 2e-21, thermorefractive_ref_asd = 4e-21)
    assert total_thermal_asd(doubled, config, 60.0) == pytest.approx(2 * total_thermal_asd(UNIT, config, 60.0))


def test_model_rejects_negative_levels():
    """Test that negative reference levels and slopes are rejected."""
    with pytest.raises(DomainError):
        ThermalNoiseModel(brownian_ref_asd = -1e-21, thermorefractive_ref_asd = 1e-21)
    with pytest.raises(DomainError):
        ThermalNoiseModel(brownian_ref_asd = 1e-21, thermorefractive_ref_asd = 1e-21, tr_slope = -0.5)


def test_unit_reflectivity_ietm_coating_noise_is_undefined():
    """
    Test that an IETM given only as r = 1 has no excess noise but no coating noise either.

    - Excess thermal noise vanishes (nothing leaks to the EETM).
    - The total needs the IETM coating term, which no finite coating gives, so it raises.
    """
    perfect = CavityConfig(MirrorSpec(r = 1.0, t = 0.0, loss = 0.0), MirrorSpec.from_layers(10))
    assert excess_thermal_asd(UNIT, perfect, 100.0) == 0.0
    with pytest.raises(DomainError, match = "no finite coating"):
        total_thermal_asd(UNIT, perfect, 100.0)
