"""Command-line front end: ``modburgers simulate | analyze | sweep``.

Exit codes: 0 success, 2 configuration or input error, 3 numerical stop
before the first scheduled output record (``--output-every`` steps).
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .model import extinction_upper_bound
from .scaling import REPORT_QUANTITIES, FitConfig, extinction_report
from .solver import ConfigError, SimConfig, run
from .traceio import (
    SCHEMA_VERSION,
    RunManifest,
    TraceFormatError,
    read_trace,
    write_json,
    write_trace,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_EARLY_STOP = 3

log = logging.getLogger("modburgers")


def _sim_args(p, with_alpha=True):
    if with_alpha:
        p.add_argument("--alpha", type=float, required=True, help="Gaussian decay rate of the initial data")
    p.add_argument("--length", type=float, default=10.0, help="rescaled domain length L")
    p.add_argument("--step", type=float, default=0.02, help="grid step h")
    p.add_argument("--dt", type=float, default=1e-4, help="time step")
    p.add_argument("--t-end", type=float, default=None, help="final time (default: extinction bound T(alpha))")
    p.add_argument("--xi-stop", type=float, default=0.3, help="stop once xi drops to this value")
    p.add_argument("--output-every", type=int, default=10, help="steps between trace records")
    p.add_argument("--coupling", choices=("implicit", "heun"), default="implicit")


def _fit_args(p):
    p.add_argument("--t0-min", type=float, default=None)
    p.add_argument("--t0-max", type=float, default=None)
    p.add_argument("--t0-step", type=float, default=1e-4)
    p.add_argument("--window", type=float, default=0.8,
                   help="keep samples with xi < WINDOW * max(xi)")


def _config(ns, alpha) -> SimConfig:
    return SimConfig(alpha=alpha, domain_length=ns.length, step=ns.step, dt=ns.dt,
                     t_end=ns.t_end, xi_stop=ns.xi_stop, output_every=ns.output_every,
                     coupling=ns.coupling)


def _fit_config(ns) -> FitConfig:
    return FitConfig(t0_min=ns.t0_min, t0_max=ns.t0_max, t0_step=ns.t0_step,
                     xi_fraction=ns.window)


def simulate_to(config: SimConfig, fit: FitConfig, trace_path: Path):
    """Run and write ``trace_path`` plus its ``.json`` sidecar; return the records."""
    records = run(config)
    sidecar = trace_path.with_suffix(".json")
    manifest = RunManifest(config=config, fit=fit,
                           outputs={"trace": trace_path.name, "sidecar": sidecar.name})
    write_trace(trace_path, records)
    meta = manifest.to_dict()
    meta.update(stop_reason=records[-1].stop, n_records=len(records),
                t_final=records[-1].t, xi_final=records[-1].xi)
    write_json(sidecar, meta)
    return records


def analyze_to(records, fit: FitConfig, report_path: Path) -> dict:
    report = extinction_report(records, fit)
    report["schemaVersion"] = SCHEMA_VERSION
    write_json(report_path, report)
    return report


def _report_failures(report) -> list[str]:
    failures = []
    for name, entry in report["quantities"].items():
        if "error" in entry:
            failures.append(f"{name}: {entry['error']}")
    return failures


def cmd_simulate(ns) -> int:
    try:
        config = _config(ns, ns.alpha)
        fit = _fit_config(ns)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(ns.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    records = simulate_to(config, fit, out)
    print(f"alpha={config.alpha}: {len(records)} records, stop={records[-1].stop} "
          f"at t={records[-1].t:.6g}, xi={records[-1].xi:.6g}")
    steps_taken = int(round(records[-1].t / config.dt))
    if records[-1].stop != "t_end" and steps_taken < config.output_every:
        return EXIT_EARLY_STOP
    return EXIT_OK


def cmd_analyze(ns) -> int:
    try:
        fit = _fit_config(ns)
        records = read_trace(ns.trace)
    except (OSError, TraceFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(ns.out) if ns.out else Path(ns.trace).with_suffix(".report.json")
    report = analyze_to(records, fit, out)
    failures = _report_failures(report)
    for msg in failures:
        hint = " (pass --t0-min/--t0-max to widen the scan)" if "widen" in msg else ""
        print(f"warning: {msg}{hint}", file=sys.stderr)
    for name, entry in report["quantities"].items():
        if "best" in entry and "error" not in entry:
            b = entry["best"]
            print(f"{name:>14}: t0={b['t0']:.4f} c1={b['c1']:.4f} err={b['error']:.2e}")
    if len(failures) == len(REPORT_QUANTITIES):
        return EXIT_CONFIG
    return EXIT_OK


def _sweep_one(alpha, ns, fit, outdir: Path):
    config = _config(ns, alpha)
    cell = outdir / f"alpha_{alpha:g}"
    cell.mkdir(parents=True, exist_ok=True)
    records = simulate_to(config, fit, cell / "trace.csv")
    report = analyze_to(records, fit, cell / "report.json")
    return config, records, report


def _summary_row(alpha, result):
    bound = extinction_upper_bound(alpha)
    row = {"alpha": alpha, "T_bound": bound}
    if isinstance(result, BaseException):
        row["status"] = f"failed: {result}"
        return row
    _, records, report = result
    row["status"] = "ok"
    row["stop"] = records[-1].stop
    for name, entry in report["quantities"].items():
        best = entry.get("best")
        row[f"t0_{name}"] = best["t0"] if best else None
        row[f"c1_{name}"] = best["c1"] if best else None
        if "error" in entry:
            row["status"] = "partial"
    t0 = row.get("t0_xi")
    row["bound_slack"] = None if t0 is None else bound - t0
    return row


def cmd_sweep(ns) -> int:
    try:
        alphas = [float(a) for a in ns.alpha_list.split(",") if a.strip()]
        if not alphas:
            raise ValueError("--alpha-list is empty")
        fit = _fit_config(ns)
        for a in alphas:
            _config(ns, a)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    outdir = Path(ns.out)
    outdir.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=ns.workers) as pool:
        futures = [pool.submit(_sweep_one, a, ns, fit, outdir) for a in alphas]
        results = []
        for fut in futures:
            try:
                results.append(fut.result())
            except Exception as exc:  # isolate per-run failures
                results.append(exc)
    rows = [_summary_row(a, r) for a, r in zip(alphas, results)]
    write_json(outdir / "summary.json", {"schemaVersion": SCHEMA_VERSION, "runs": rows})
    for row in rows:
        t0 = row.get("t0_xi")
        t0s = "    n/a" if t0 is None else f"{t0:.4f}"
        print(f"alpha={row['alpha']:<6g} t0={t0s} T(alpha)={row['T_bound']:.5f} {row['status']}")
    return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modburgers", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="evolve one initial profile and write a CSV trace")
    _sim_args(p)
    _fit_args(p)
    p.add_argument("--out", required=True, help="trace CSV path; the sidecar goes next to it")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="fit extinction scaling laws to a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--out", default=None, help="report path (default: <trace>.report.json)")
    _fit_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="simulate and analyze several alpha values")
    p.add_argument("--alpha-list", required=True, help="comma-separated alpha values")
    _sim_args(p, with_alpha=False)
    _fit_args(p)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
