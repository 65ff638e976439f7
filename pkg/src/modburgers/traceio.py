"""CSV traces and JSON manifests.

Traces are plain CSV (header row, LF line endings) with every float written
to 17 significant digits, so a parse of a written trace reproduces the
values exactly.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .scaling import FitConfig
from .solver import SimConfig
from .state import TRACE_COLUMNS, TraceRecord

__all__ = [
    "SCHEMA_VERSION",
    "TraceFormatError",
    "RunManifest",
    "format_trace",
    "write_trace",
    "parse_trace",
    "read_trace",
    "write_json",
]

SCHEMA_VERSION = 1


class TraceFormatError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(x, ".17g")


def format_trace(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for r in records:
        w.writerow([_fmt(v) for v in r.values()])
    return buf.getvalue()


def write_trace(path, records) -> None:
    Path(path).write_text(format_trace(records), encoding="utf-8", newline="")


def parse_trace(text: str) -> list[TraceRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != TRACE_COLUMNS:
        raise TraceFormatError(f"expected header {','.join(TRACE_COLUMNS)}")
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(TRACE_COLUMNS):
            raise TraceFormatError(f"line {lineno}: expected {len(TRACE_COLUMNS)} fields")
        try:
            vals = [float(v) for v in row]
        except ValueError as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from None
        if not all(math.isfinite(v) for v in vals):
            raise TraceFormatError(f"line {lineno}: non-finite value")
        records.append(TraceRecord(*vals))
    return records


def read_trace(path) -> list[TraceRecord]:
    return parse_trace(Path(path).read_text(encoding="utf-8"))


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8", newline="")


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a run; serialized in the JSON sidecar."""

    config: SimConfig
    fit: FitConfig = FitConfig()
    outputs: dict = field(default_factory=dict)
    determinism: str = "deterministic: no random numbers are drawn"
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schemaVersion": self.schema_version,
            "config": asdict(self.config),
            "fit": asdict(self.fit),
            "outputs": dict(self.outputs),
            "determinism": self.determinism,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        version = d.get("schemaVersion")
        if version != SCHEMA_VERSION:
            raise TraceFormatError(f"unsupported schemaVersion {version!r}")
        return cls(
            config=SimConfig(**d["config"]),
            fit=FitConfig(**d.get("fit", {})),
            outputs=dict(d.get("outputs", {})),
            determinism=d.get("determinism", cls.determinism),
            schema_version=version,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls.from_dict(json.loads(text))
