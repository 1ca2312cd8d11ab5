"""Utility module for common constants and enums used across models, schemas and the noise engine.

Centralizes the coating table, loss defaults, search ceilings, output formats
and exit codes so that every module reads the same values.
"""

import enum

# Enum definitions
class ControlMode(enum.Enum):
    NO_CONTROL = "none"
    PHASE_QUADRATURE = "phase"
    VARIATIONAL_FIXED = "variational"
    VARIATIONAL_IDEAL = "variational-ideal"


# Coating law: r ~ sqrt(1 - 2.8 * 0.49^N) for N >= 4, exact values below
COATING_PREFACTOR = 2.8
COATING_BASE = 0.49
EXACT_LOW_N_REFLECTIVITY = {0: 0.184, 1: 0.49, 2: 0.72, 3: 0.85}  # N = 0 is the bare silica substrate
FIRST_FORMULA_LAYER = 4
MAX_LAYER_SCAN = 40  # reflectivity is within 1e-12 of unity beyond this

# Loss defaults
DEFAULT_MIRROR_LOSS = 50e-6
DEFAULT_SINGLE_MIRROR_LOSS = 50e-6
DEFAULT_LOSS_BUDGET = 0.5
ENERGY_TOLERANCE = 1e-12

# Optimizer scan range for the IETM
MAX_IETM_LAYERS = 15
SINGLE_MIRROR_LAYERS = 15

# Quarter-wave silica/tantala thickness ratio (n_Ta2O5 / n_SiO2)
QUARTER_WAVE_THICKNESS_RATIO = 1.42

# Marker accepted wherever a sideband amplitude ratio is expected
OPTIMIZED_RATIO = "optimized"

# Output formats
FLOAT_FORMAT = ".14e"  # 15 significant digits
BUDGET_COLUMNS = (
    "frequency",
    "ietm_coating",
    "eetm_coating_sensed",
    "thermorefractive_sensed",
    "shot",
    "rp_carrier",
    "control_shot",
    "control_rp",
    "total",
)
SOURCE_COLUMNS = BUDGET_COLUMNS[1:-1]
OUTPUT_FORMATS = ("csv", "json")

# CLI exit codes (stable contract)
EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_PHYSICS_ERROR = 3

# Environment variables: default config directory, log level
CONFIG_DIR_ENV = "ENDMIRROR_CONFIG_DIR"
LOG_LEVEL_ENV = "ENDMIRROR_LOG_LEVEL"
