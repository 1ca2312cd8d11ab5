"""Noise budget model definition.

Contains the NoiseBudget class: per-source amplitude spectral densities of
the compound mirror over a frequency grid, and their quadrature total.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from utils.constraints import BUDGET_COLUMNS, SOURCE_COLUMNS
from utils.error_handlers import DomainError


@dataclass(frozen = True)
class NoiseBudget:
    """Model for a noise budget.

    Attributes:
        frequency_grid (ndarray): Frequencies in Hz.
        sources (dict): Source name -> ASD array (m/rtHz), one entry per SOURCE_COLUMNS name.
        scheme (str): Control scheme the budget was computed for.
        config_hash (str | None): Hash of the configuration that produced it.
        generated_at (str | None): ISO timestamp, the only non-deterministic field.

    Constraints:
        - total equals the quadrature sum of the sources at every frequency.
        - all entries are >= 0.
    """
    frequency_grid: np.ndarray
    sources: Dict[str, np.ndarray]
    scheme: str
    config_hash: Optional[str] = None
    generated_at: Optional[str] = None
    total: np.ndarray = field(init = False)

    def __post_init__(self):
        missing = set(SOURCE_COLUMNS) - set(self.sources)
        if missing:
            raise DomainError(f"Noise budget is missing sources: {sorted(missing)}.")
        columns = [np.broadcast_to(np.asarray(self.sources[name], dtype = float), self.frequency_grid.shape)
                   for name in SOURCE_COLUMNS]
        if any(np.any(column < 0) for column in columns):
            raise DomainError("Noise budget entries must be >= 0.")
        object.__setattr__(self, "sources", dict(zip(SOURCE_COLUMNS, columns)))
        object.__setattr__(self, "total", np.sqrt(np.sum(np.square(columns), axis = 0)))

    def column(self, name):
        if name == "frequency":
            return self.frequency_grid
        if name == "total":
            return self.total
        return self.sources[name]

    def rows(self):
        """Rows in the fixed BUDGET_COLUMNS order."""
        columns = [self.column(name) for name in BUDGET_COLUMNS]
        return [tuple(float(column[i]) for column in columns) for i in range(len(self.frequency_grid))]

    def at(self, index = 0):
        """One grid point as a name -> value mapping."""
        return {name: float(self.column(name)[index]) for name in BUDGET_COLUMNS}
