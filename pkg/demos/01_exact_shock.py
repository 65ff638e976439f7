"""
The exact viscous shock
=======================

A traveling shock of ``u_t = |u|_x + u_xx`` joins ``U- < 0`` to ``U+ > 0``.
Its profile is built from two exponentials, glued at the interface where
``U`` vanishes.  The slope is continuous there; the curvature jumps by
``-2|U'|``.
"""
import numpy as np

from modburgers.model import ShockParams, shock_derivatives, shock_jump_residual, shock_profile

params = ShockParams(u_plus=1.0, u_minus=-0.5, xi0=0.0)
print(f"speed c = {params.speed:.6f}")

###############################################################################
# Sample the profile on both sides of the interface.
x = np.linspace(-4, 4, 9)
for xi, u in zip(x, shock_profile(params, x)):
    print(f"  U({xi:+.1f}) = {u:+.6f}")

###############################################################################
# One-sided curvature at the interface, and the jump condition.
for side in ("left", "right"):
    d1, d2 = shock_derivatives(params, 0.0, side=side)
    print(f"{side:>5}: U' = {d1:.6f}, U'' = {d2:+.6f}")
print(f"jump residual [U''] + 2|U'| = {shock_jump_residual(params):.1e}")
