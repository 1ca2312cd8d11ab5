"""
Centralized error handling for the end-mirror noise engine.

This module defines the exceptions raised across the engine and the CLI
decorator that turns them into the stable exit-code contract:
0 success, 2 input error, 3 physics/feasibility error.

By using a consistent JSON shape via the `error_response()` helper,
every failing command reports errors in a predictable format for scripts.
"""

import functools
import json

import click
from flask import current_app
from marshmallow import ValidationError

from utils.constraints import EXIT_INPUT_ERROR, EXIT_PHYSICS_ERROR


# ========== EXCEPTIONS ==========
class PhysicsError(Exception):
    """Base class for invalid physics or infeasible configurations."""


class DomainError(PhysicsError, ValueError):
    """An argument lies outside the domain of a formula."""


class SingularConfigurationError(PhysicsError):
    """The configuration is degenerate (zero signal or zero control coupling)."""


class InfeasibleBudgetError(PhysicsError):
    """No mirror configuration satisfies the loss budget."""

    def __init__(self, message, best_loss=None):
        super().__init__(message)
        self.best_loss = best_loss


class CalibrationError(PhysicsError):
    """The calibration could not meet its targets within tolerance."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


class ConfigError(Exception):
    """A configuration or targets file cannot be read."""


# ========== STANDARDIZED ERROR RESPONSE ==========
def error_response(message, status_code, error_type="Error"):
    click.echo(json.dumps({
        "error": {
            "type": error_type,
            "message": message,
            "status": status_code
        }
    }), err=True)
    return status_code


# ========== CLI ERROR HANDLER ==========
def handle_cli_errors(command):
    """Wrap a click command so library exceptions become exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ValidationError as err:
            code = error_response(err.messages, EXIT_INPUT_ERROR, "ValidationError")
        except ConfigError as err:
            code = error_response(str(err), EXIT_INPUT_ERROR, "ConfigError")
        except OSError as err:
            code = error_response(f"File error: {err}", EXIT_INPUT_ERROR, "OSError")
        except CalibrationError as err:
            message = {"message": str(err), "residuals": err.residuals}
            code = error_response(message, EXIT_PHYSICS_ERROR, "CalibrationError")
        except PhysicsError as err:
            code = error_response(str(err), EXIT_PHYSICS_ERROR, type(err).__name__)
        current_app.logger.warning("Command %s failed with exit code %d", command.__name__, code)
        raise click.exceptions.Exit(code)

    return wrapper
