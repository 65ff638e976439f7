"""
Scaling laws near extinction
============================

As the interfaces meet, the interface position, slope, curvature, mass and
energy all behave like powers of ``t0 - t``.  Scanning candidate ``t0``
values and regressing in log-log coordinates estimates both.
"""
from modburgers import FitConfig, SimConfig, extinction_report, run

records = run(SimConfig(alpha=0.1))
report = extinction_report(records, FitConfig(xi_fraction=0.8))
print(f"window: {report['window']}")
for name, entry in report["quantities"].items():
    best = entry.get("best")
    if best is None:
        print(f"{name:>14}: {entry['error']}")
        continue
    print(f"{name:>14}: t0={best['t0']:.4f}  exponent={best['c1']:.4f} "
          f"(expected {entry['expected_exponent']})")
print(report["interface_speed"]["statement"])
