"""Noise engine CLI commands for budgets, layer optimization, sweeps and calibration.
Provides:
    - `flask noise budget`: Write the per-source noise budget of a configuration over a frequency grid.
    - `flask noise optimize`: Find the best IETM layer count under a loss budget.
    - `flask noise sweep`: Write figure-of-merit curves over an IETM reflectivity grid, one per loss budget.
    - `flask noise calibrate`: Fit the thermal coefficients and mirror mass, write a configuration file.

Note:
    - Exit codes: 0 success, 2 input error, 3 physics/feasibility error.
    - Relative --config/--targets paths fall back to the CONFIG_DIR directory.
"""

from datetime import datetime, timezone
from pathlib import Path

import click
import numpy as np
from flask import Blueprint, current_app
from marshmallow import ValidationError

from models.mirror import MirrorSpec
from models.noise_config import NoiseConfig
from models.quantum import ControlScheme
from noise.budget import assemble_budget, log_frequency_grid
from noise.optimize import calibrate, optimize_layers, sweep_reflectivity
from schemas.budget_schema import render_budget
from schemas.calibration_schema import load_targets, residual_report
from schemas.config_schema import config_hash, config_text, load_config
from schemas.result_schema import optimization_to_json, render_sweep
from utils.constraints import ControlMode, OUTPUT_FORMATS
from utils.error_handlers import ConfigError, DomainError, handle_cli_errors
from utils.validators import parse_ratio

noise_commands = Blueprint("noise", __name__)

SCHEME_CHOICES = [mode.value for mode in ControlMode]


# ========== HELPERS ==========
def resolve_path(path):
    """`path` itself when it exists, else the same relative path under CONFIG_DIR."""
    path = Path(path)
    config_dir = current_app.config.get("CONFIG_DIR")
    if path.exists() or path.is_absolute() or not config_dir:
        return path
    candidate = Path(config_dir) / path
    return candidate if candidate.exists() else path


def scheme_from_options(config, scheme, ratio, zeta):
    """The config's control scheme with any --scheme/--ratio/--zeta overrides applied."""
    base = config.scheme
    try:
        selected = ControlScheme(
            mode = ControlMode(scheme) if scheme else base.mode,
            sideband_amplitude_ratio = parse_ratio(ratio) if ratio is not None else base.sideband_amplitude_ratio,
            zeta = zeta if zeta is not None else base.zeta,
        )
    except DomainError as err:
        raise ValidationError({"options": [str(err)]})
    if selected.controlled and config.params is None:
        raise ConfigError("Controlled schemes need CARRIER_POWER, LASER_ANGULAR_FREQUENCY and MIRROR_MASS in the config.")
    return selected


def parse_budgets(value):
    try:
        budgets = [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise ValidationError({"--budgets": [f"Expected comma-separated numbers, got {value!r}."]})
    if not budgets or any(budget < 0 for budget in budgets):
        raise ValidationError({"--budgets": ["Loss budgets must be nonnegative numbers."]})
    return budgets


def parse_grid(value):
    """`start:stop:points` -> linearly spaced IETM reflectivities."""
    try:
        start, stop, points = value.split(":")
        start, stop, points = float(start), float(stop), int(points)
    except ValueError:
        raise ValidationError({"--grid": [f"Expected start:stop:points, got {value!r}."]})
    if not (0.0 < start < stop < 1.0 and points >= 2):
        raise ValidationError({"--grid": ["Need 0 < start < stop < 1 and at least 2 points."]})
    return np.linspace(start, stop, points)


def output_format_for(path, output_format):
    if output_format:
        return output_format
    return "json" if Path(path).suffix.lower() == ".json" else "csv"


def write_output(path, text):
    path = Path(path)
    path.write_text(text, encoding = "utf-8")
    current_app.logger.info("Wrote %s (%d bytes)", path, len(text))


scheme_option = click.option("--scheme", type = click.Choice(SCHEME_CHOICES), default = None,
                             help = "Control scheme; defaults to the config's SCHEME.")
ratio_option = click.option("--ratio", default = None, help = "Sideband amplitude ratio A1s/A1c, or 'optimized'.")
zeta_option = click.option("--zeta", type = float, default = None, help = "Fixed readout angle in radians.")
format_option = click.option("--format", "output_format", type = click.Choice(OUTPUT_FORMATS), default = None,
                             help = "Output format; inferred from the --out suffix when omitted.")


# ======== CLI COMMANDS ========
@noise_commands.cli.command("budget")
@click.option("--config", "config_path", required = True, help = "Configuration file (KEY=VALUE).")
@click.option("--fmin", type = float, default = 10.0, show_default = True)
@click.option("--fmax", type = float, default = 1000.0, show_default = True)
@click.option("--points", type = int, default = 200, show_default = True)
@scheme_option
@ratio_option
@zeta_option
@click.option("--out", "out_path", required = True)
@format_option
@handle_cli_errors
def budget_command(config_path, fmin, fmax, points, scheme, ratio, zeta, out_path, output_format):
    """Write the noise budget of a configuration."""
    config = load_config(resolve_path(config_path))
    selected = scheme_from_options(config, scheme, ratio, zeta)
    frequencies = log_frequency_grid(fmin, fmax, points)
    budget = assemble_budget(
        config.model,
        config.params,
        config.cavity(),
        selected,
        frequencies,
        config_hash = config_hash(config.with_scheme(selected)),
        generated_at = datetime.now(timezone.utc).isoformat(timespec = "seconds"),
    )
    write_output(out_path, render_budget(budget, output_format_for(out_path, output_format)))
    click.echo(f"Noise budget ({selected.mode.value}, {points} frequencies) written to {out_path}.")


@noise_commands.cli.command("optimize")
@click.option("--config", "config_path", required = True, help = "Configuration file (KEY=VALUE).")
@click.option("--budget", "loss_budget", type = float, default = None, help = "Loss budget; defaults to LOSS_BUDGET.")
@click.option("--freq", type = float, default = 100.0, show_default = True)
@scheme_option
@ratio_option
@zeta_option
@click.option("--out", "out_path", default = None, help = "JSON result file; printed when omitted.")
@handle_cli_errors
def optimize_command(config_path, loss_budget, freq, scheme, ratio, zeta, out_path):
    """Find the IETM layer count with the lowest coating-plus-excess noise."""
    config = load_config(resolve_path(config_path))
    selected = scheme_from_options(config, scheme, ratio, zeta)
    result = optimize_layers(
        config.model,
        config.params,
        config.loss_budget if loss_budget is None else loss_budget,
        freq,
        selected,
        single_loss = config.reference_single_mirror_loss,
        mirror_loss = config.eetm_loss,
        ietm_loss = config.ietm.loss,
    )
    text = optimization_to_json(result)
    if out_path:
        write_output(out_path, text)
    else:
        click.echo(text, nl = False)
    click.echo(
        f"Best split ({selected.mode.value}): N_IETM={result.best_n_ietm}, N_EETM={result.best_n_eetm}, "
        f"{result.total_asd_at_f:.4e} m/rtHz at {freq:g} Hz.",
        err = out_path is None,
    )


@noise_commands.cli.command("sweep")
@click.option("--config", "config_path", required = True, help = "Configuration file (KEY=VALUE).")
@click.option("--budgets", default = "0.1,0.5,1.0", show_default = True, help = "Comma-separated loss budgets.")
@click.option("--freq", type = float, default = 100.0, show_default = True)
@click.option("--grid", default = "0.2:0.99:80", show_default = True, help = "IETM reflectivity grid start:stop:points.")
@scheme_option
@ratio_option
@zeta_option
@click.option("--out", "out_path", required = True)
@format_option
@handle_cli_errors
def sweep_command(config_path, budgets, freq, grid, scheme, ratio, zeta, out_path, output_format):
    """Write figure-of-merit curves over the IETM reflectivity for several loss budgets."""
    config = load_config(resolve_path(config_path))
    selected = scheme_from_options(config, scheme, ratio, zeta)
    table = sweep_reflectivity(
        config.model,
        config.params,
        parse_budgets(budgets),
        freq,
        selected,
        parse_grid(grid),
        single_loss = config.reference_single_mirror_loss,
        mirror_loss = config.eetm_loss,
        ietm_loss = config.ietm.loss,
    )
    write_output(out_path, render_sweep(table, output_format_for(out_path, output_format)))
    click.echo(f"Sweep of {len(table.grid)} reflectivities x {len(table.curves)} budgets written to {out_path}.")


@noise_commands.cli.command("calibrate")
@click.option("--targets", "targets_path", default = None, help = "Targets file (KEY=VALUE); defaults built in.")
@click.option("--out", "out_path", required = True, help = "Configuration file to write.")
@handle_cli_errors
def calibrate_command(targets_path, out_path):
    """Fit the thermal coefficients and mirror mass, then write a configuration."""
    targets = load_targets(resolve_path(targets_path) if targets_path else None)
    current_app.logger.info("Calibrating against %s", targets)
    result = calibrate(targets)
    config = NoiseConfig(
        ietm = MirrorSpec.from_layers(targets.controlled_layers),
        model = result.model,
        params = result.params,
        loss_budget = targets.loss_budget,
    )
    write_output(out_path, config_text(config, comments = residual_report(result)))
    click.echo(f"Calibrated configuration written to {out_path}.")
