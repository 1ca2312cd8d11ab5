"""
Unit tests for noise budget assembly and its CSV/JSON serialization.
"""

import csv
import io
import json

import numpy as np
import pytest

from models.mirror import CavityConfig, MirrorSpec
from models.noise_budget import NoiseBudget
from models.quantum import ControlScheme
from models.thermal_model import ThermalNoiseModel
from noise.budget import assemble_budget, coating_and_excess_asd, log_frequency_grid
from noise.quantum import quantum_noise
from noise.thermal import brownian_coating_asd, excess_thermal_asd
from schemas.budget_schema import budget_to_csv, budget_to_json
from utils.constraints import BUDGET_COLUMNS, ControlMode, SOURCE_COLUMNS
from utils.error_handlers import DomainError

FREQUENCIES = log_frequency_grid(10.0, 1000.0, 25)


@pytest.fixture
def cavity():
    return CavityConfig.solve(MirrorSpec.from_layers(1), 0.5)


def test_log_frequency_grid():
    """Test that the grid is log-spaced with inclusive ends and rejects bad bounds."""
    grid = log_frequency_grid(10.0, 1000.0, 3)
    assert grid == pytest.approx([10.0, 100.0, 1000.0])
    with pytest.raises(DomainError):
        log_frequency_grid(100.0, 10.0, 5)
    with pytest.raises(DomainError):
        log_frequency_grid(10.0, 100.0, 1)


def test_uncontrolled_budget_columns(model, cavity):
    """
    Test the columns of an uncontrolled budget.

    - All quantum columns are zero.
    - The IETM coating column is the Brownian ASD of one layer.
    - The two sensed columns recombine to the excess thermal noise.
    """
    budget = assemble_budget(model, None, cavity, ControlScheme(), FREQUENCIES)
    assert budget.scheme == "none"
    for name in ("shot", "rp_carrier", "control_shot", "control_rp"):
        assert np.all(budget.column(name) == 0.0)
    np.testing.assert_allclose(budget.column("ietm_coating"), brownian_coating_asd(model, 1, FREQUENCIES))
    excess = np.hypot(budget.column("eetm_coating_sensed"), budget.column("thermorefractive_sensed"))
    np.testing.assert_allclose(excess, excess_thermal_asd(model, cavity, FREQUENCIES), rtol = 1e-12)


def test_controlled_budget_columns(model, params, cavity):
    """
    Test the columns of a phase-controlled budget.

    - The loop removes the EETM and thermorefractive columns.
    - Quantum columns match quantum_noise at the same frequencies.
    """
    scheme = ControlScheme(ControlMode.PHASE_QUADRATURE)
    budget = assemble_budget(model, params, cavity, scheme, FREQUENCIES)
    quantum = quantum_noise(cavity.ietm.r, params, 2 * np.pi * FREQUENCIES, scheme)
    assert np.all(budget.column("eetm_coating_sensed") == 0.0)
    assert np.all(budget.column("thermorefractive_sensed") == 0.0)
    np.testing.assert_allclose(budget.column("control_shot"), quantum.control_shot_asd)
    np.testing.assert_allclose(budget.column("rp_carrier"), quantum.rp_carrier_asd)


def test_controlled_budget_needs_quantum_parameters(model, cavity):
    with pytest.raises(DomainError):
        assemble_budget(model, None, cavity, ControlScheme(ControlMode.PHASE_QUADRATURE), FREQUENCIES)


@pytest.mark.parametrize("mode", list(ControlMode))
def test_total_is_quadrature_sum_on_every_row(model, params, cavity, mode):
    """Test that every row's total is the quadrature sum of its sources, for every scheme."""
    scheme = ControlScheme(mode, 2.0) if mode is ControlMode.VARIATIONAL_IDEAL else ControlScheme(mode)
    budget = assemble_budget(model, params, cavity, scheme, FREQUENCIES)
    for row in budget.rows():
        values = dict(zip(BUDGET_COLUMNS, row))
        squares = sum(values[name] ** 2 for name in SOURCE_COLUMNS)
        assert values["total"] == pytest.approx(np.sqrt(squares), rel = 1e-12)
        assert all(value >= 0 for value in row)


def test_zero_thermal_model_gives_zero_budget():
    zero = ThermalNoiseModel(brownian_ref_asd = 0.0, thermorefractive_ref_asd = 0.0)
    cavity = CavityConfig.solve(MirrorSpec.from_layers(2), 0.5)
    budget = assemble_budget(zero, None, cavity, ControlScheme(), log_frequency_grid(10.0, 100.0, 2))
    assert np.all(budget.total == 0.0)


def test_figure_of_merit_excludes_carrier_quantum_noise(model, params, cavity):
    """Test that the optimization figure of merit leaves out carrier shot and radiation pressure noise."""
    budget = assemble_budget(model, params, cavity, ControlScheme(ControlMode.PHASE_QUADRATURE), [100.0])
    point = budget.at(0)
    expected = np.sqrt(point["ietm_coating"] ** 2 + point["control_shot"] ** 2 + point["control_rp"] ** 2)
    assert coating_and_excess_asd(budget)[0] == pytest.approx(expected)
    assert coating_and_excess_asd(budget)[0] < point["total"]


def test_noise_budget_rejects_bad_sources():
    """Test that a budget with a missing or negative source column is rejected."""
    grid = np.array([10.0, 20.0])
    sources = {name: np.zeros(2) for name in SOURCE_COLUMNS}
    with pytest.raises(DomainError):
        NoiseBudget(grid, {name: value for name, value in sources.items() if name != "shot"}, "none")
    sources["shot"] = np.array([1e-21, -1e-21])
    with pytest.raises(DomainError):
        NoiseBudget(grid, sources, "none")


def test_csv_and_json_carry_identical_numbers(model, params, cavity):
    """
    Test that the CSV and JSON renderings carry the same numbers.

    - CSV starts with config hash, scheme and timestamp lines, then the fixed header.
    - Parsed CSV rows equal the JSON rows exactly.
    """
    budget = assemble_budget(
        model, params, cavity, ControlScheme(ControlMode.PHASE_QUADRATURE), FREQUENCIES,
        config_hash = "abc123", generated_at = "2026-01-01T00:00:00+00:00",
    )
    text = budget_to_csv(budget)
    lines = text.splitlines()
    assert lines[:3] == ["# config_hash: abc123", "# scheme: phase", "# generated_at: 2026-01-01T00:00:00+00:00"]
    assert lines[3] == ",".join(BUDGET_COLUMNS)
    csv_rows = [[float(value) for value in row] for row in csv.reader(io.StringIO("\n".join(lines[4:])))]

    document = json.loads(budget_to_json(budget))
    assert document["columns"] == list(BUDGET_COLUMNS)
    assert document["scheme"] == "phase"
    assert csv_rows == document["rows"]
    assert len(csv_rows) == len(FREQUENCIES)


def test_csv_numbers_have_fifteen_significant_digits(model, cavity):
    budget = assemble_budget(model, None, cavity, ControlScheme(), [123.456])
    row = budget_to_csv(budget).splitlines()[-1].split(",")
    assert row[0] == "1.23456000000000e+02"
    assert all(len(value.split("e")[0].replace(".", "")) == 15 for value in row)
