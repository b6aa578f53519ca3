"""Run manifests, deterministic JSON emission, and the tower function."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional, Union

MANIFEST_SCHEMA = "treeramsey/manifest/1"
TOWER_SCHEMA = "treeramsey/tower/1"

ARTIFACT_VERSION = "0.1.0"

_TOWER_BIT_LIMIT = 10**6


def tower(i: int, x: int) -> Union[int, str]:
    """Iterated exponential: height-0 is x, each level is 2**previous.

    Exact when the value fits in 10**6 bits, otherwise the symbolic
    string "t_i(x)".
    """
    if i < 0:
        raise ValueError("height must be >= 0")
    if x < 1:
        raise ValueError("argument must be >= 1")
    value = x
    for _ in range(i):
        if value >= _TOWER_BIT_LIMIT:
            return f"t_{i}({x})"
        value = 1 << value
    if value.bit_length() > _TOWER_BIT_LIMIT:
        return f"t_{i}({x})"
    return value


def dump_json(obj: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def check_schema(obj: dict, schema: str, allowed: set[str]) -> None:
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    if obj.get("schema") != schema:
        raise ValueError(f"expected schema {schema}, got {obj.get('schema')!r}")
    unknown = set(obj) - allowed - {"schema"}
    if unknown:
        raise ValueError(f"unknown fields for {schema}: {sorted(unknown)}")


@dataclass
class RunManifest:
    """Echo of one command invocation; timing lives here, not in reports."""

    command: str
    params: dict
    seeds: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "schema": MANIFEST_SCHEMA,
            "artifact_version": ARTIFACT_VERSION,
            "command": self.command,
            "params": self.params,
            "seeds": self.seeds,
            "outputs": self.outputs,
            "elapsed_ms": self.elapsed_ms,
        }


def emit_run(
    manifest: RunManifest,
    report: dict,
    out_dir: Optional[str],
    witnesses: Optional[dict[str, dict]] = None,
    stream=None,
) -> None:
    """Write manifest.json/report.json (+ witnesses/) or one stdout document.

    report bytes depend only on the computation's inputs; rerunning the
    manifest's command reproduces them exactly.
    """
    import sys

    stream = stream if stream is not None else sys.stdout
    if out_dir is None:
        stream.write(dump_json({"manifest": manifest.to_json(), "report": report}))
        return
    os.makedirs(out_dir, exist_ok=True)
    manifest.outputs.setdefault("report", "report.json")
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(dump_json(report))
    if witnesses:
        os.makedirs(os.path.join(out_dir, "witnesses"), exist_ok=True)
        for name, payload in sorted(witnesses.items()):
            rel = os.path.join("witnesses", f"{name}.json")
            manifest.outputs[name] = rel
            with open(os.path.join(out_dir, rel), "w", encoding="utf-8") as fh:
                fh.write(dump_json(payload))
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        fh.write(dump_json(manifest.to_json()))
