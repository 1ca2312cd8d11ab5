"""Flask application factory for the end-mirror noise engine.

Sets up the Flask app that hosts the `noise` CLI command group and reads
environment configuration (CONFIG_DIR) from a .env file when present.
"""

import logging
import os

import click
from dotenv import load_dotenv
from flask import Flask
from flask.cli import FlaskGroup

from controllers.cli_controller import noise_commands
from utils.constraints import CONFIG_DIR_ENV, LOG_LEVEL_ENV

load_dotenv()

def create_app():
    """Create and configure the Flask application.
    Returns: Configured Flask app instance.
    """
    app = Flask(__name__)
    app.config["CONFIG_DIR"] = os.getenv(CONFIG_DIR_ENV)
    app.json.sort_keys = False # keep order of keys in JSON
    app.logger.setLevel(os.getenv(LOG_LEVEL_ENV, "WARNING").upper())
    logging.getLogger("noise").setLevel(app.logger.level)
    app.register_blueprint(noise_commands) # Register the noise CLI commands
    return app


@click.group(cls = FlaskGroup, create_app = create_app)
def cli():
    """End-mirror cavity noise engine."""


if __name__ == "__main__":
    cli()
