"""
Initial data and the extinction-time bound
==========================================

The odd initial profile is a quartic on ``(0, 1)`` that is negative there,
glued to ``1 - exp(-alpha (x^2 - 1))`` outside.  The z-mass of this
profile bounds the time at which the inner region disappears.
"""
import numpy as np

from modburgers.model import (
    build_initial_profile,
    eval_initial_data,
    extinction_upper_bound,
    initial_interface_velocity,
)

for alpha in (0.1, 0.5, 1.0, 1.5):
    prof = build_initial_profile(alpha)
    x = np.linspace(0, 1, 201)[1:-1]
    umin = eval_initial_data(prof, x).min()
    print(f"alpha={alpha:<4} min u0 on (0,1) = {umin:+.4f}  "
          f"xi'(0) = {initial_interface_velocity(alpha):+.2f}  "
          f"T(alpha) = {extinction_upper_bound(alpha):.5f}")

###############################################################################
# The interface initially moves outward only when alpha > 1.
