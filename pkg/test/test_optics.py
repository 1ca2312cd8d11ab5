"""
Unit tests for compound-mirror optics: reflectivity law, sensing factors and the loss budget.
"""

import math

import numpy as np
import pytest

from models.mirror import CavityConfig, MirrorSpec
from noise.optics import (
    coating_reflectivity,
    compound_loss,
    compound_reflectivity,
    eetm_sensing_factor,
    effective_layers,
    layers_for_reflectivity,
    solve_eetm_layers,
    thermorefractive_sensing_ratio,
)
from utils.error_handlers import DomainError, InfeasibleBudgetError, SingularConfigurationError


def test_exact_low_layer_reflectivities():
    """Test that the bare substrate and the first three coatings use the exact table values."""
    assert coating_reflectivity(0) == 0.184
    assert coating_reflectivity(1) == 0.49
    assert coating_reflectivity(2) == 0.72
    assert coating_reflectivity(3) == 0.85


def test_coating_law_from_four_layers():
    """Test that four or more layers follow r = sqrt(1 - 2.8 * 0.49^N)."""
    assert coating_reflectivity(15) == pytest.approx(0.999968, abs = 1e-6)
    assert coating_reflectivity(4) == pytest.approx(math.sqrt(1 - 2.8 * 0.49 ** 4))


def test_coating_reflectivity_strictly_increasing_to_one():
    """
    Test that coating reflectivity grows with every added layer.

    - Scans N = 0..40.
    - Checks strict increase and that N = 40 is within 1e-12 of unity.
    """
    values = [coating_reflectivity(n) for n in range(41)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert 1.0 - values[-1] < 1e-12


@pytest.mark.parametrize("bad", [-1, 1.5, True])
def test_coating_reflectivity_rejects_non_layer_counts(bad):
    """Test that negative, fractional and boolean layer counts are rejected."""
    with pytest.raises(DomainError):
        coating_reflectivity(bad)


def test_compound_reflectivity_examples():
    """Test the compound reflectivity against hand-computed pairs."""
    assert compound_reflectivity(0.0, 0.3) == pytest.approx(0.3)
    assert compound_reflectivity(0.7, 1.0) == pytest.approx(1.0)
    assert compound_reflectivity(0.72, 0.85) == pytest.approx(1.57 / 1.612)
    assert compound_reflectivity(0.72, 0.85) == pytest.approx(0.97395, abs = 1e-5)


def test_compound_reflectivity_symmetry_and_dominance():
    """
    Test that the compound reflectivity is symmetric and dominates both mirrors.

    - Draws 10,000 seeded random (r_i, r_e) pairs in [0, 1].
    - Checks symmetry, max(r_i, r_e) <= value <= 1 for each pair.
    """
    rng = np.random.default_rng(20240521)
    for a, b in rng.uniform(0.0, 1.0, size = (10_000, 2)):
        value = compound_reflectivity(a, b)
        assert value == pytest.approx(compound_reflectivity(b, a), rel = 1e-15, abs = 1e-15)
        assert value >= max(a, b) - 1e-15
        assert value <= 1.0 + 1e-15


def test_compound_reflectivity_domain():
    """Test that reflectivities outside [0, 1] are rejected."""
    with pytest.raises(DomainError):
        compound_reflectivity(1.2, 0.5)
    with pytest.raises(DomainError):
        compound_reflectivity(0.5, -0.1)


def test_layers_for_reflectivity():
    """Test that the smallest layer count reaching a target reflectivity is returned."""
    assert layers_for_reflectivity(0.49) == 1
    assert layers_for_reflectivity(0.5) == 2
    assert layers_for_reflectivity(0.1) == 0
    with pytest.raises(DomainError):
        layers_for_reflectivity(1.0)


def test_effective_layers_follows_table_and_law():
    """Test that the continuous layer count passes through the table and the coating law."""
    assert effective_layers(0.72) == pytest.approx(2.0)
    assert effective_layers(0.1) == 0.0
    assert effective_layers(coating_reflectivity(12)) == pytest.approx(12.0)
    assert 1.0 < effective_layers(0.6) < 2.0


def test_eetm_sensing_factor():
    """
    Test the weight of EETM displacement in the carrier reflection.

    - Checks the no-IETM and perfect-IETM limits and one hand value.
    - Checks it never grows with the IETM reflectivity.
    """
    assert eetm_sensing_factor(0.0, 1.0) == 1.0
    assert eetm_sensing_factor(1.0, 0.7) == 0.0
    assert eetm_sensing_factor(0.49, 0.85) == pytest.approx((1 - 0.49 ** 2) / (1 + 0.49 * 0.85) ** 2)
    assert eetm_sensing_factor(0.49, 0.85) == pytest.approx(0.3788, abs = 1e-4)
    factors = [eetm_sensing_factor(r, 0.9) for r in np.linspace(0.0, 1.0, 50)]
    assert all(b <= a for a, b in zip(factors, factors[1:]))


def test_thermorefractive_sensing_ratio():
    """Test the sideband/carrier gain ratio, including its singularity at r = 1."""
    assert thermorefractive_sensing_ratio(0.0) == 1.0
    assert thermorefractive_sensing_ratio(0.49) == pytest.approx(2.9216, abs = 1e-4)
    assert thermorefractive_sensing_ratio(0.9) == pytest.approx(19.0)
    with pytest.raises(SingularConfigurationError):
        thermorefractive_sensing_ratio(1.0)


def test_mirror_spec_energy_conservation():
    """
    Test that every constructed mirror conserves energy.

    - Builds coatings N = 0..40 and 101 reflectivity-only mirrors with 100 ppm loss.
    - Checks r^2 + t^2 + loss = 1 and that loss is capped, never raised.
    """
    mirrors = [MirrorSpec.from_layers(n) for n in range(41)]
    mirrors += [MirrorSpec.from_reflectivity(r, 1e-4) for r in np.linspace(0.0, 1.0, 101)]
    for mirror in mirrors:
        assert abs(mirror.r ** 2 + mirror.t ** 2 + mirror.loss - 1.0) < 1e-12
        assert mirror.loss <= 1e-4


def test_mirror_spec_rejects_inconsistent_fields():
    """Test that non-conserving or table-inconsistent mirrors are rejected."""
    with pytest.raises(DomainError):
        MirrorSpec(r = 0.5, t = 0.5, loss = 0.0)
    with pytest.raises(DomainError):
        MirrorSpec(r = 0.5, t = math.sqrt(0.75), loss = 0.0, layers = 1)


def test_compound_loss_follows_buildup_formula():
    """Test the compound loss against the buildup formula for a 0.49 / 0.99997 pair."""
    ietm = MirrorSpec.from_reflectivity(0.49, 50e-6)
    eetm = MirrorSpec.from_reflectivity(0.99997, 50e-6)
    weight = ietm.t ** 2 / (1 + 0.49 * 0.99997) ** 2
    expected = 50e-6 + weight * (50e-6 + eetm.t ** 2)
    assert compound_loss(ietm, eetm) == pytest.approx(expected, rel = 1e-12)
    assert compound_loss(ietm, eetm) == pytest.approx(7.05e-5, rel = 1e-2)


def test_compound_loss_without_leakage_and_monotone_in_eetm_loss():
    """
    Test the compound loss limits.

    - A perfect IETM lets no loss through.
    - More EETM loss never lowers the compound loss.
    """
    perfect = MirrorSpec(r = 1.0, t = 0.0, loss = 0.0)
    assert compound_loss(perfect, MirrorSpec.from_layers(3)) == 0.0
    ietm = MirrorSpec.from_layers(2)
    losses = [compound_loss(ietm, MirrorSpec.from_reflectivity(0.999, loss)) for loss in (0.0, 1e-5, 1e-4, 5e-4)]
    assert all(b >= a * (1 - 1e-12) for a, b in zip(losses, losses[1:]))


def test_solve_eetm_layers_is_smallest_feasible_count():
    """
    Test that the solved EETM is the thinnest feasible coating.

    - Solves for a one-layer IETM at budget 0.5.
    - Checks the count meets the budget and one layer fewer does not.
    """
    n_e = solve_eetm_layers(0.49, 0.5, 50e-6)
    assert n_e == 15
    ietm = MirrorSpec.from_layers(1)
    allowed = 1.5 * 50e-6
    assert compound_loss(ietm, MirrorSpec.from_layers(n_e)) <= allowed
    assert compound_loss(ietm, MirrorSpec.from_layers(n_e - 1)) > allowed


def test_solve_eetm_layers_non_increasing_in_budget():
    """Test that a looser loss budget never needs more EETM layers."""
    counts = [solve_eetm_layers(0.85, budget, 50e-6) for budget in (0.1, 0.3, 0.5, 1.0, 2.0)]
    assert all(b <= a for a, b in zip(counts, counts[1:]))


def test_solve_eetm_layers_without_leakage():
    assert solve_eetm_layers(1.0, 0.1, 50e-6) == 0


def test_solve_eetm_layers_reports_infeasibility():
    """Test that an infeasible budget raises with the best achievable loss attached."""
    with pytest.raises(InfeasibleBudgetError) as err:
        solve_eetm_layers(0.184, 0.0, 50e-6)
    assert err.value.best_loss > 50e-6


def test_cavity_solve_satisfies_budget():
    """Test that CavityConfig.solve pairs a two-layer IETM with a 14-layer EETM within budget."""
    cavity = CavityConfig.solve(MirrorSpec.from_layers(2), 0.5)
    assert cavity.eetm.layers == 14
    assert cavity.budget_satisfied
    assert cavity.reflectivity == pytest.approx(compound_reflectivity(0.72, cavity.eetm.r))
