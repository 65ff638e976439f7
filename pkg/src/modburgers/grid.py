"""Uniform grid on the rescaled domains and the ghost-point algebra at y = 1.

One contiguous array ``u[0..M]`` holds both regions: ``y_k = k h`` with the
interface at ``k = N``.  ``u[0]`` and ``u[N]`` are pinned to zero.  Ghost
values are never stored; they are recomputed from ``u[N-1]`` and ``u[N+1]``
whenever needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "InterfaceBreakdown",
    "SingularInterfaceError",
    "DegenerateSlopeError",
    "GridSpec",
    "GhostPair",
    "ghost_values",
    "interface_derivatives",
    "interface_velocity_discrete",
    "DEFAULT_SLOPE_FLOOR",
]

DEFAULT_SLOPE_FLOOR = 1e-12


class InterfaceBreakdown(ArithmeticError):
    """The discrete interface relations can no longer be evaluated."""


class SingularInterfaceError(InterfaceBreakdown):
    """``h * xi >= 2``: the ghost-point system is singular."""


class DegenerateSlopeError(InterfaceBreakdown):
    """``|u[N+1] - u[N-1]|`` fell below the slope floor."""


@dataclass(frozen=True)
class GridSpec:
    """Indices and spacing of the grid ``y_k = k h``, ``k = 0..M``.

    Use :meth:`from_step` to build one from ``(h, L)``.
    """

    n_inner: int
    m_total: int

    def __post_init__(self):
        if self.n_inner < 4:
            raise ValueError(f"need at least 4 intervals on [0, 1], got {self.n_inner}")
        if self.m_total <= self.n_inner:
            raise ValueError("the outer region must contain at least one interval")

    @classmethod
    def from_step(cls, step: float, domain_length: float) -> "GridSpec":
        n = int(round(1.0 / step))
        m = int(round(domain_length / step))
        if abs(n * step - 1.0) > 1e-9 or abs(m * step - domain_length) > 1e-9 * max(1.0, domain_length):
            raise ValueError(
                f"step {step} does not divide both 1 and L = {domain_length}"
            )
        return cls(n, m)

    @property
    def step(self) -> float:
        return 1.0 / self.n_inner

    @property
    def domain_length(self) -> float:
        return self.m_total / self.n_inner

    @property
    def y(self) -> np.ndarray:
        return np.arange(self.m_total + 1) / self.n_inner

    @property
    def inner(self) -> slice:
        """Nodes of the closed inner interval ``[0, 1]``."""
        return slice(0, self.n_inner + 1)

    @property
    def outer(self) -> slice:
        """Nodes of the closed outer interval ``[1, L]``."""
        return slice(self.n_inner, self.m_total + 1)

    def neighbors(self, u) -> tuple[float, float]:
        """``(u[N-1], u[N+1])``, the values adjacent to the interface."""
        n = self.n_inner
        return float(u[n - 1]), float(u[n + 1])


class GhostPair(NamedTuple):
    v_left: float   # outer branch extended to y = 1 - h
    v_right: float  # inner branch extended to y = 1 + h


def _check(h, xi):
    if np.any(np.asarray(h * xi) >= 2.0):
        raise SingularInterfaceError(f"h*xi = {np.max(h * xi)} >= 2")
    return 2.0 - h * xi


def ghost_values(u_left: float, u_right: float, h: float, xi: float) -> GhostPair:
    """Ghost values enforcing continuity of ``u_y`` and the ``u_yy`` jump.

    `u_left` and `u_right` are ``u[N-1]`` and ``u[N+1]``.
    """
    den = _check(h, xi)
    hx = h * xi
    return GhostPair(
        v_left=(2.0 * u_left - hx * u_right) / den,
        v_right=(2.0 * u_right - hx * u_left) / den,
    )


def interface_derivatives(u_left: float, u_right: float, h: float, xi: float):
    """``u_x`` and ``u_xx`` from the left at the interface, in the x variable.

    Central differences at ``y = 1`` with the ghost values substituted, then
    the chain rule ``d/dx = xi^{-1} d/dy``.
    """
    den = _check(h, xi)
    hx = h * xi
    ux = (u_right - u_left) / (hx * den)
    uxx_left = 2.0 * (u_right + u_left * (1.0 - hx)) / (hx * hx * den)
    return ux, uxx_left


def interface_velocity_discrete(u_left: float, u_right: float, h: float,
                                xi: float, slope_floor: float = DEFAULT_SLOPE_FLOOR) -> float:
    """Interface speed ``xi'`` from the two values adjacent to ``y = 1``.

    Raises
    ------
    SingularInterfaceError
        If ``h * xi >= 2``.
    DegenerateSlopeError
        If the interface slope has collapsed below `slope_floor`.
    """
    den = _check(h, xi)
    diff = u_right - u_left
    if not abs(diff) > slope_floor:
        raise DegenerateSlopeError(f"interface slope {diff:.3e} below floor {slope_floor:.1e}")
    return -den * (u_right + u_left) / (h * xi * diff)
