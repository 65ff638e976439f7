"""Crank-Nicolson evolution of the rescaled odd three-interface problem.

In ``y = x / xi(t)`` the two regions become ``(0, 1)`` and ``(1, L)``::

    u_t = xi^{-1} (xi' y - 1) u_y + xi^{-2} u_yy      0 < y < 1
    u_t = xi^{-1} (xi' y + 1) u_y + xi^{-2} u_yy      1 < y < L

with ``u(0) = u(1) = 0`` and ``u_y(L) = 0``.  Both regions are linear once
``xi`` and ``xi'`` are frozen; the interface speed closes the system through
the ghost-point formula.  Coefficients are frozen at the midpoint of the
step and ``xi`` is advanced with the trapezoidal (Heun) rule, either
explicitly or iterated to convergence.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_banded

from .diagnostics import make_record
from .grid import (
    DEFAULT_SLOPE_FLOOR,
    DegenerateSlopeError,
    GridSpec,
    InterfaceBreakdown,
    SingularInterfaceError,
    interface_velocity_discrete,
)
from .model import build_initial_profile, eval_initial_data, extinction_upper_bound
from .state import SimState, TraceRecord

__all__ = [
    "ConfigError",
    "SimConfig",
    "CNSystem",
    "operator_diagonals",
    "assemble_cn_system",
    "interface_velocity",
    "initial_state",
    "step",
    "run",
    "CouplingDivergenceError",
]

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


class CouplingDivergenceError(InterfaceBreakdown):
    """The implicit interface iteration did not converge."""



@dataclass(frozen=True)
class SimConfig:
    """Run parameters.  Defaults are the ones used for the published runs.

    ``t_end=None`` means "up to the analytic extinction bound" ``T(alpha)``,
    which the interfaces can never outlive.  ``corrector_passes`` is the
    number of extra Crank-Nicolson solves per step with coefficients
    re-frozen at the Heun-corrected midpoint; it only applies to
    ``coupling="heun"``, which is unstable once ``dt > h^2 xi^2``.
    """

    alpha: float
    domain_length: float = 10.0
    step: float = 0.02
    dt: float = 1e-4
    t_end: float | None = None
    xi_stop: float = 0.3
    output_every: int = 10
    slope_floor: float = DEFAULT_SLOPE_FLOOR
    corrector_passes: int = 1
    coupling: str = "implicit"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.t_end is not None and not self.t_end > 0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if not self.xi_stop > 0:
            raise ConfigError(f"xi_stop must be positive, got {self.xi_stop}")
        if self.output_every < 1:
            raise ConfigError("output_every must be >= 1")
        if self.coupling not in ("implicit", "heun"):
            raise ConfigError(f"coupling must be 'implicit' or 'heun', got {self.coupling!r}")
        if self.corrector_passes < 0:
            raise ConfigError("corrector_passes must be >= 0")
        if not self.step * 1.0 < 2.0:
            raise ConfigError(f"h * xi(0) = {self.step} must be < 2")
        try:
            self.grid()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def grid(self) -> GridSpec:
        return GridSpec.from_step(self.step, self.domain_length)

    @property
    def end_time(self) -> float:
        return extinction_upper_bound(self.alpha) if self.t_end is None else self.t_end


def operator_diagonals(xi: float, xi_prime: float, grid: GridSpec, neumann: bool = True):
    """Tridiagonal central-difference operator of the frozen system.

    Returns ``(lower, main, upper)``, each of length ``M + 1``; row ``k`` of
    the operator is ``lower[k] u[k-1] + main[k] u[k] + upper[k] u[k+1]``.
    Rows ``0`` and ``N`` are zero (Dirichlet).  Row ``M`` uses the mirror
    point ``u[M+1] = u[M-1]``, or is zero when ``neumann=False``.
    """
    n, m, h = grid.n_inner, grid.m_total, grid.step
    y = grid.y
    shift = np.where(np.arange(m + 1) < n, -1.0, 1.0)
    adv = (xi_prime * y + shift) / xi
    dif = 1.0 / (xi * xi)
    lower = dif / h**2 - adv / (2 * h)
    main = np.full(m + 1, -2.0 * dif / h**2)
    upper = dif / h**2 + adv / (2 * h)
    for k in (0, n):
        lower[k] = main[k] = upper[k] = 0.0
    if neumann:
        lower[m] = 2.0 * dif / h**2
    else:
        lower[m] = main[m] = 0.0
    upper[m] = 0.0
    lower[0] = 0.0
    return lower, main, upper


@dataclass(frozen=True)
class CNSystem:
    """``(I - dt/2 A) u_new = (I + dt/2 A) u_old`` in LAPACK banded layout."""

    ab: np.ndarray
    rhs: np.ndarray

    def solve(self) -> np.ndarray:
        return solve_banded((1, 1), self.ab, self.rhs, check_finite=False)


def assemble_cn_system(state: SimState, xi_frozen: float, xi_prime_frozen: float,
                       dt: float, grid: GridSpec, neumann: bool = True) -> CNSystem:
    if grid.step * xi_frozen >= 2.0:
        raise SingularInterfaceError(f"h*xi = {grid.step * xi_frozen} >= 2")
    lower, main, upper = operator_diagonals(xi_frozen, xi_prime_frozen, grid, neumann)
    u = state.u
    au = main * u
    au[1:] += lower[1:] * u[:-1]
    au[:-1] += upper[:-1] * u[1:]
    half = 0.5 * dt
    ab = np.zeros((3, u.size))
    ab[0, 1:] = -half * upper[:-1]
    ab[1] = 1.0 - half * main
    ab[2, :-1] = -half * lower[1:]
    return CNSystem(ab=ab, rhs=u + half * au)


def interface_velocity(u, xi: float, grid: GridSpec, slope_floor=DEFAULT_SLOPE_FLOOR) -> float:
    ul, ur = grid.neighbors(u)
    return interface_velocity_discrete(ul, ur, grid.step, xi, slope_floor)


def initial_state(config: SimConfig, grid: GridSpec | None = None) -> SimState:
    """Initial data on the grid with ``xi(0) = 1``, so ``y = x``."""
    grid = grid or config.grid()
    u = np.asarray(eval_initial_data(build_initial_profile(config.alpha), grid.y), dtype=float)
    return SimState(t=0.0, u=u, xi=1.0,
                    xi_prime=interface_velocity(u, 1.0, grid, config.slope_floor))


def _cn(state, xi_mid, xp_mid, dt, grid):
    u = assemble_cn_system(state, xi_mid, xp_mid, dt, grid).solve()
    u[0] = 0.0
    u[grid.n_inner] = 0.0
    return u


def _heun_step(state, config, grid):
    dt, floor = config.dt, config.slope_floor
    xi, xp = state.xi, state.xi_prime
    xi_new = xi + dt * xp
    xp_mid = xp
    u_new = None
    for _ in range(1 + config.corrector_passes):
        if xi_new <= 0.0:
            raise DegenerateSlopeError(f"interface position collapsed to {xi_new:.3e}")
        u_new = _cn(state, 0.5 * (xi + xi_new), xp_mid, dt, grid)
        xp_end = interface_velocity(u_new, xi_new, grid, floor)
        xi_new = xi + 0.5 * dt * (xp + xp_end)
        xp_mid = 0.5 * (xp + xp_end)
    return u_new, xi_new


def _implicit_step(state, config, grid, rtol=1e-12, max_iter=30):
    # Solve p = (xi'(t_n) + xi'(t_n+1)) / 2 for the mean speed p, where
    # xi(t_n+1) = xi + dt p and the CN coefficients are frozen at
    # (xi + dt p / 2, p).  Secant iteration seeded by the Heun values.
    dt, floor = config.dt, config.slope_floor
    xi, xp = state.xi, state.xi_prime

    def trial(p):
        xi_new = xi + dt * p
        if xi_new <= 0.0:
            raise DegenerateSlopeError(f"interface position collapsed to {xi_new:.3e}")
        u = _cn(state, xi + 0.5 * dt * p, p, dt, grid)
        v = interface_velocity(u, xi_new, grid, floor)
        return p - 0.5 * (xp + v), u, xi_new

    p0 = xp
    r0, u, xi_new = trial(p0)
    p1 = p0 - r0
    for _ in range(max_iter):
        r1, u, xi_new = trial(p1)
        if abs(r1) <= rtol * max(1.0, abs(p1)):
            return u, xi_new
        if r1 == r0:
            break
        p0, p1, r0 = p1, p1 - r1 * (p1 - p0) / (r1 - r0), r1
    raise CouplingDivergenceError(f"interface iteration stalled at t={state.t:.6g}")


def step(state: SimState, config: SimConfig, grid: GridSpec) -> SimState:
    """Advance one time step.

    ``coupling="heun"``: predictor ``xi~ = xi + dt xi'``, CN solve with
    ``(xi + xi~)/2`` and ``xi'`` frozen, Heun update of ``xi`` from the
    speeds before and after the solve; each corrector pass re-solves at the
    corrected midpoint.  ``coupling="implicit"`` iterates the same
    trapezoidal relation to convergence, which removes the step-size limit
    ``dt < h^2 xi^2`` of the explicit coupling.

    Raises
    ------
    InterfaceBreakdown
        When the interface speed cannot be evaluated any more.
    """
    if config.coupling == "implicit":
        u_new, xi_new = _implicit_step(state, config, grid)
    else:
        u_new, xi_new = _heun_step(state, config, grid)
    if not (xi_new > 0.0 and np.isfinite(xi_new)):
        raise DegenerateSlopeError(f"interface position collapsed to {xi_new:.3e}")
    xp_new = interface_velocity(u_new, xi_new, grid, config.slope_floor)
    return SimState(t=state.t + config.dt, u=u_new, xi=xi_new, xi_prime=xp_new)


def _sign_regime_ok(u, grid) -> bool:
    n = grid.n_inner
    return bool(np.all(u[1:n] < 0.0) and np.all(u[n + 1:] > 0.0))


def run(config: SimConfig, *, keep_states: bool = False):
    """Evolve from the initial data until ``t_end``, ``xi <= xi_stop`` or breakdown.

    Returns the list of :class:`TraceRecord`; the last one carries the stop
    reason (``"t_end"``, ``"xi_stop"``, ``"degenerate_slope"``,
    ``"singular"`` or ``"nonfinite"``).  With ``keep_states=True`` a second
    list holding the :class:`SimState` behind each record is returned too.
    """
    grid = config.grid()
    try:
        state = initial_state(config, grid)
    except InterfaceBreakdown as exc:
        raise ConfigError(f"initial data unusable: {exc}") from None
    t_end = config.end_time
    records: list[TraceRecord] = [make_record(state, grid)]
    states = [state]
    last_emitted = 0
    warned = False
    n = 0
    stop = None
    while stop is None:
        if state.t >= t_end - 0.5 * config.dt:
            stop = "t_end"
            break
        try:
            new = step(state, config, grid)
        except SingularInterfaceError:
            stop = "singular"
            break
        except DegenerateSlopeError:
            stop = "degenerate_slope"
            break
        except CouplingDivergenceError:
            stop = "nonconvergent"
            break
        if not np.all(np.isfinite(new.u)) or not np.isfinite(new.xi_prime):
            stop = "nonfinite"
            break
        n += 1
        state = replace(new, t=n * config.dt)
        if not warned and not _sign_regime_ok(state.u, grid):
            log.warning("sign regime violated at t=%.6g (alpha=%g)", state.t, config.alpha)
            warned = True
        if state.xi <= config.xi_stop:
            stop = "xi_stop"
        if stop is not None or n % config.output_every == 0:
            records.append(make_record(state, grid))
            states.append(state)
            last_emitted = n
    if last_emitted == n:
        records[-1] = replace(records[-1], stop=stop)
    else:
        records.append(make_record(state, grid, stop=stop))
        states.append(state)
    return (records, states) if keep_states else records
