"""Value types shared by the solver and the diagnostics."""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

__all__ = ["SimState", "TraceRecord", "TRACE_COLUMNS"]


@dataclass(frozen=True)
class SimState:
    """Snapshot of the rescaled solution.

    ``u[k]`` approximates ``u(t, y_k)`` with ``y = x / xi(t)``.
    """

    t: float
    u: np.ndarray
    xi: float
    xi_prime: float


@dataclass(frozen=True)
class TraceRecord:
    t: float
    xi: float
    xi_prime: float
    ux: float
    uxx_left: float
    uxx_right: float
    mass_region: float
    energy_region: float
    z_mass: float
    stop: str | None = None  # set on the final record of a run only

    def values(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in TRACE_COLUMNS)


TRACE_COLUMNS = tuple(f.name for f in fields(TraceRecord) if f.name != "stop")
