"""Extinction-time and power-law estimation by log-log regression.

For a candidate extinction time ``t0`` the samples ``q(t)`` are regressed as
``log q = c1 log(t0 - t) + c2``.  Scanning ``t0`` over a grid and keeping
the candidate with the smallest mean squared residual gives both ``t0`` and
the exponent ``c1``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

__all__ = [
    "FitError",
    "DegenerateFitError",
    "ScanBoundaryError",
    "PowerFit",
    "FitConfig",
    "ScanResult",
    "loglog_fit",
    "scan_t0",
    "select_window",
    "extinction_report",
    "EXPECTED_EXPONENTS",
    "REPORT_QUANTITIES",
]

# exponents of the extinction scaling law, used for reference in reports
EXPECTED_EXPONENTS = {
    "xi": 0.5,
    "ux": 1.0,
    "uxx_left": 0.5,
    "mass_region": 2.0,
    "energy_region": 3.5,
}
REPORT_QUANTITIES = tuple(EXPECTED_EXPONENTS)


class FitError(ValueError):
    pass


class DegenerateFitError(FitError):
    """Fewer than three usable samples."""


class ScanBoundaryError(FitError):
    """The best candidate sits on the edge of the ``t0`` grid."""

    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


@dataclass(frozen=True)
class PowerFit:
    t0: float
    c1: float
    c2: float
    error: float  # mean squared residual in log-log space


def _as_samples(t, q):
    t = np.asarray(t, dtype=float)
    q = np.asarray(q, dtype=float)
    if t.shape != q.shape or t.ndim != 1:
        raise FitError("t and q must be 1-d arrays of equal length")
    if t.size < 3:
        raise DegenerateFitError(f"need at least 3 samples, got {t.size}")
    if np.any(~(q > 0)):
        raise FitError("all samples must be positive")
    return t, q


def loglog_fit(t, q, t0: float) -> PowerFit:
    """Least-squares fit of ``log q`` against ``log(t0 - t)``."""
    t, q = _as_samples(t, q)
    if not np.all(t < t0):
        raise FitError(f"t0 = {t0} must exceed every sample time")
    x = np.log(t0 - t)
    y = np.log(q)
    design = np.column_stack([x, np.ones_like(x)])
    (c1, c2), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (c1 * x + c2)
    return PowerFit(t0=float(t0), c1=float(c1), c2=float(c2), error=float(np.mean(resid**2)))


@dataclass(frozen=True)
class FitConfig:
    """Candidate grid and sample window.

    ``t0_min``/``t0_max`` default to ``t_last + t0_step`` and
    ``t_last + 0.2``.  The window keeps samples with
    ``xi < xi_fraction * max(xi)``; ``tail_fraction`` additionally keeps only
    the trailing fraction of the remaining samples.
    """

    t0_min: float | None = None
    t0_max: float | None = None
    t0_step: float = 1e-4
    xi_fraction: float | None = 0.8
    tail_fraction: float | None = None

    def __post_init__(self):
        if not self.t0_step > 0:
            raise ValueError("t0_step must be positive")
        if self.xi_fraction is not None and not 0 < self.xi_fraction <= 1:
            raise ValueError("xi_fraction must lie in (0, 1]")
        if self.tail_fraction is not None and not 0 < self.tail_fraction <= 1:
            raise ValueError("tail_fraction must lie in (0, 1]")

    def candidates(self, t_last: float) -> np.ndarray:
        lo = t_last + self.t0_step if self.t0_min is None else self.t0_min
        hi = t_last + 0.2 if self.t0_max is None else self.t0_max
        if not lo > t_last:
            raise FitError(f"t0_min = {lo} must exceed the last sample time {t_last}")
        if hi < lo:
            raise FitError("t0_max < t0_min")
        count = int(np.floor((hi - lo) / self.t0_step + 1e-9)) + 1
        return lo + self.t0_step * np.arange(count)


@dataclass(frozen=True)
class ScanResult:
    best: PowerFit
    t0: np.ndarray = field(repr=False)
    c1: np.ndarray = field(repr=False)
    c2: np.ndarray = field(repr=False)
    error: np.ndarray = field(repr=False)

    @property
    def fits(self) -> list[PowerFit]:
        return [PowerFit(*row) for row in zip(self.t0.tolist(), self.c1.tolist(),
                                               self.c2.tolist(), self.error.tolist())]

    def to_dict(self) -> dict:
        return {
            "best": asdict(self.best),
            "curve": {
                "t0": self.t0.tolist(),
                "c1": self.c1.tolist(),
                "error": self.error.tolist(),
            },
        }


def scan_t0(t, q, config: FitConfig = FitConfig(), allow_boundary: bool = False) -> ScanResult:
    """Fit every candidate ``t0`` on the grid and keep the best.

    All candidates are fitted at once with the closed-form normal equations
    on centered data.

    Raises
    ------
    ScanBoundaryError
        If the minimum lies on the first or last candidate and
        `allow_boundary` is false; the grid then needs widening.
    """
    t, q = _as_samples(t, q)
    t0 = config.candidates(float(t.max()))
    x = np.log(t0[:, None] - t[None, :])
    y = np.log(q)
    xm = x.mean(axis=1, keepdims=True)
    ym = y.mean()
    xc = x - xm
    yc = y - ym
    c1 = (xc @ yc) / np.einsum("ij,ij->i", xc, xc)
    c2 = ym - c1 * xm[:, 0]
    resid = yc[None, :] - c1[:, None] * xc
    err = np.mean(resid**2, axis=1)
    i = int(np.argmin(err))
    best = PowerFit(t0=float(t0[i]), c1=float(c1[i]), c2=float(c2[i]), error=float(err[i]))
    result = ScanResult(best=best, t0=t0, c1=c1, c2=c2, error=err)
    if not allow_boundary and t0.size > 1 and i in (0, t0.size - 1):
        raise ScanBoundaryError(
            f"error minimum at t0 = {best.t0:.6g}, the edge of [{t0[0]:.6g}, {t0[-1]:.6g}];"
            " widen the t0 grid", best=result)
    return result


def select_window(records, config: FitConfig) -> list:
    """Late-time records used for fitting (see :class:`FitConfig`)."""
    records = list(records)
    if config.xi_fraction is not None and records:
        xi_max = max(r.xi for r in records)
        records = [r for r in records if r.xi < config.xi_fraction * xi_max]
    if config.tail_fraction is not None and records:
        keep = max(1, int(round(config.tail_fraction * len(records))))
        records = records[-keep:]
    return records


def _quantity(records, name):
    if len(records) < 3:
        raise DegenerateFitError(f"need at least 3 samples in the window, got {len(records)}")
    t = np.array([r.t for r in records])
    q = np.array([getattr(r, name) for r in records])
    if name == "mass_region":
        q = np.abs(q)
    elif name == "uxx_left":
        # central differences can cross zero near extinction; drop those
        q = q * np.sign(np.median(q))
    keep = q > 0
    return t[keep], q[keep]


def extinction_report(trace, config: FitConfig = FitConfig()) -> dict:
    """Scan ``t0`` independently for each tracked quantity.

    Returns a JSON-ready dict.  Failures are recorded per quantity under
    ``"error"`` instead of aborting the whole report.
    """
    window = select_window(trace, config)
    out = {"window": {"n_samples": len(window)}, "quantities": {}}
    if window:
        out["window"].update(t_first=window[0].t, t_last=window[-1].t)
    for name in REPORT_QUANTITIES:
        entry = {"expected_exponent": EXPECTED_EXPONENTS[name]}
        try:
            t, q = _quantity(window, name)
            entry.update(scan_t0(t, q, config).to_dict())
        except ScanBoundaryError as exc:
            entry["error"] = str(exc)
            entry.update(exc.best.to_dict())
        except FitError as exc:
            entry["error"] = str(exc)
        out["quantities"][name] = entry
    xi_fit = out["quantities"]["xi"].get("best")
    if xi_fit is not None:
        power = xi_fit["c1"] - 1.0
        out["interface_speed"] = {
            "exponent": power,
            "diverges": power < 0,
            "statement": f"xi'(t) ~ -(t0 - t)^({power:.4f}) as t -> t0 = {xi_fit['t0']:.4f}",
        }
    return out
