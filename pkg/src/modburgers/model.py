"""Exact solutions, consistent initial data and analytic bounds.

Nothing here depends on a discretization.  The traveling viscous shock of
the modular Burgers' equation ``u_t = |u|_x + u_xx`` is available in closed
form, and the odd three-interface problem is started from a Gaussian tail on
``(1, inf)`` glued to a quartic on ``(0, 1)`` whose coefficients are fixed by
the interface conditions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfcx

__all__ = [
    "ShockParams",
    "InitialProfile",
    "shock_speed",
    "shock_profile",
    "shock_derivatives",
    "shock_jump_residual",
    "shock_pde_residual",
    "build_initial_profile",
    "eval_initial_data",
    "initial_interface_velocity",
    "extinction_upper_bound",
]


def shock_speed(u_plus: float, u_minus: float) -> float:
    """Speed selected by the asymptotic states of a viscous shock.

    Raises
    ------
    ValueError
        Unless ``u_minus < 0 < u_plus``.
    """
    if not (u_minus < 0.0 < u_plus):
        raise ValueError(f"need u_minus < 0 < u_plus, got ({u_plus}, {u_minus})")
    return -(u_plus + u_minus) / (u_plus - u_minus)


@dataclass(frozen=True)
class ShockParams:
    """Asymptotic states and interface location of a traveling shock."""

    u_plus: float
    u_minus: float
    xi0: float = 0.0
    speed: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "speed", shock_speed(self.u_plus, self.u_minus))


def shock_profile(params: ShockParams, xi):
    """Evaluate the exact shock ``U_c(xi)``; vectorized over `xi`."""
    xi = np.asarray(xi, dtype=float)
    c = params.speed
    s = xi - params.xi0
    # clip the exponents so the unused branch never overflows
    right = params.u_plus * -np.expm1(-(1.0 + c) * np.maximum(s, 0.0))
    left = params.u_minus * -np.expm1((1.0 - c) * np.minimum(s, 0.0))
    out = np.where(s > 0.0, right, left)
    return out[()] if out.ndim == 0 else out


def shock_derivatives(params: ShockParams, xi, side: str | None = None):
    """Analytic ``(U', U'')`` of the shock.

    At ``xi == xi0`` the second derivative is discontinuous, so `side`
    (``"left"`` or ``"right"``) picks the one-sided limit there.  Away from
    the interface `side` is ignored.
    """
    xi = np.asarray(xi, dtype=float)
    c = params.speed
    s = xi - params.xi0
    if side == "right":
        use_right = s >= 0.0
    elif side == "left":
        use_right = s > 0.0
    elif side is None:
        if np.any(s == 0.0):
            raise ValueError("side must be given at the interface")
        use_right = s > 0.0
    else:
        raise ValueError(f"side must be 'left', 'right' or None, got {side!r}")
    er = np.exp(-(1.0 + c) * np.maximum(s, 0.0))
    el = np.exp((1.0 - c) * np.minimum(s, 0.0))
    d1 = np.where(use_right, params.u_plus * (1.0 + c) * er,
                  -params.u_minus * (1.0 - c) * el)
    d2 = np.where(use_right, -params.u_plus * (1.0 + c) ** 2 * er,
                  -params.u_minus * (1.0 - c) ** 2 * el)
    if d1.ndim == 0:
        return d1[()], d2[()]
    return d1, d2


def shock_jump_residual(params: ShockParams) -> float:
    """``[U'']^+_- + 2|U'|`` at the interface; zero for the exact shock."""
    d1_right, d2_right = shock_derivatives(params, params.xi0, side="right")
    d1_left, d2_left = shock_derivatives(params, params.xi0, side="left")
    slope = 0.5 * (d1_left + d1_right)
    return float(d2_right - d2_left + 2.0 * abs(slope))


def shock_pde_residual(params: ShockParams, xi, side: str | None = None):
    """Residual of the traveling-wave ODE ``-c U' = (|U|)' + U''``.

    ``(|U|)' = sign(U) U'``, with the sign taken from the branch, so the
    residual is well defined at the interface too.
    """
    d1, d2 = shock_derivatives(params, xi, side=side)
    xi = np.asarray(xi, dtype=float)
    s = xi - params.xi0
    if side == "right":
        sign = np.where(s >= 0.0, 1.0, -1.0)
    else:
        sign = np.where(s > 0.0, 1.0, -1.0)
    res = -params.speed * d1 - sign * d1 - d2
    return res[()] if np.ndim(res) == 0 else res


@dataclass(frozen=True)
class InitialProfile:
    """Gaussian-tail/quartic initial condition for the odd problem.

    ``u0(x) = x(1-x)(a x^2 + b x + c_coef)`` on ``(0, 1)`` and
    ``1 - exp(-alpha (x^2 - 1))`` on ``(1, inf)``.
    """

    alpha: float
    a: float
    b: float
    c_coef: float


def build_initial_profile(alpha: float) -> InitialProfile:
    """Quartic coefficients consistent with all three interface conditions.

    The quadratic factor ``a x^2 + b x + c`` is convex (``a > 0``) and
    negative at both ends of ``[0, 1]``, so ``u0 < 0`` on ``(0, 1)`` for
    every ``alpha > 0``.  This is re-checked here rather than trusted.
    """
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    a = alpha * (10.0 * alpha + 1.0) / 7.0
    b = -3.0 * alpha * (2.0 * alpha + 3.0) / 7.0
    c = -2.0 * alpha * (2.0 * alpha + 3.0) / 7.0
    if not (a > 0.0 and c < 0.0 and a + b + c < 0.0):
        raise ValueError(f"initial data for alpha={alpha} is not negative on (0, 1)")
    return InitialProfile(alpha=alpha, a=a, b=b, c_coef=c)


def _inner_branch(p: InitialProfile, x, deriv: int):
    # x(1-x)(a x^2 + b x + c) = -a x^4 + (a-b) x^3 + (b-c) x^2 + c x
    coefs = np.array([-p.a, p.a - p.b, p.b - p.c_coef, p.c_coef, 0.0])
    return np.polyval(np.polyder(coefs, deriv) if deriv else coefs, x)


def _outer_branch(p: InitialProfile, x, deriv: int):
    al = p.alpha
    if deriv == 0:
        return -np.expm1(-al * (x * x - 1.0))
    g = np.exp(-al * (x * x - 1.0))
    if deriv == 1:
        return 2.0 * al * x * g
    if deriv == 2:
        return (2.0 * al - 4.0 * al * al * x * x) * g
    raise ValueError("only derivatives up to order 2 are available")


def eval_initial_data(profile: InitialProfile, x, *, deriv: int = 0,
                      side: str | None = None):
    """Evaluate ``u0`` or one of its first two derivatives.

    Parameters
    ----------
    profile : InitialProfile
    x : float or array_like
        Nonnegative abscissae.
    deriv : {0, 1, 2}
        Derivative order.
    side : {None, "left", "right"}
        Branch used at ``x == 1``.  With ``None`` the value there is 0, and
        derivatives at ``x == 1`` require an explicit side.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("initial data is defined for x >= 0 only")
    if side not in (None, "left", "right"):
        raise ValueError(f"side must be 'left', 'right' or None, got {side!r}")
    at_one = x == 1.0
    if side is None and deriv > 0 and np.any(at_one):
        raise ValueError("one-sided derivative at x = 1 needs side='left' or 'right'")
    use_outer = (x > 1.0) | (at_one & (side == "right"))
    out = np.where(use_outer, _outer_branch(profile, x, deriv),
                   _inner_branch(profile, x, deriv))
    if deriv == 0:
        out = np.where(at_one | (x == 0.0), 0.0, out)
    return out[()] if out.ndim == 0 else out


def initial_interface_velocity(alpha: float) -> float:
    """Interface speed at ``t = 0`` implied by the initial data."""
    return 2.0 * (alpha - 1.0)


def extinction_upper_bound(alpha: float) -> float:
    """Closed form of ``M(0) = int_0^inf (1 - u0(x)) dx``.

    The z-mass decreases at least at unit rate, so this bounds the time at
    which the two interfaces coalesce.  ``exp(alpha) erfc(sqrt(alpha))`` is
    evaluated as ``erfcx`` to stay finite for large `alpha`.
    """
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    r = math.sqrt(alpha)
    tail = math.sqrt(math.pi) * float(erfcx(r)) / (2.0 * r)
    return tail + 2.0 * alpha * alpha / 21.0 + 17.0 * alpha / 70.0 + 1.0
