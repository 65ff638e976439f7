"""
Interface evolution
===================

Evolve the rescaled problem with Crank-Nicolson in space-time and an
implicit update of the interface position.  For small alpha the inner
region shrinks monotonically; for alpha = 1.5 it first grows.
"""
from modburgers import SimConfig, run

for alpha in (0.5, 1.5):
    records = run(SimConfig(alpha=alpha))
    peak = max(records, key=lambda r: r.xi)
    last = records[-1]
    print(f"alpha={alpha}: {len(records)} records, max xi={peak.xi:.4f} at t={peak.t:.4f}, "
          f"stop '{last.stop}' at t={last.t:.4f} (xi={last.xi:.4f})")

###############################################################################
# A few samples of the alpha = 1.5 trajectory.
for r in records[::40]:
    print(f"  t={r.t:.3f}  xi={r.xi:.4f}  xi'={r.xi_prime:+.3f}  ux={r.ux:.4f}")
