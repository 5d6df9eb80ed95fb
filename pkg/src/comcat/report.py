"""Deterministic check-run reports.

A report separates the hashed deterministic body (command, input hashes,
seed, tolerance, verdicts, residuals, certificates) from volatile
envelope fields (runtime).  Two runs over identical inputs with the same
seed produce byte-identical bodies.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

SCHEMA_VERSION = 1


def body_bytes(body: dict) -> bytes:
    return json.dumps(body, sort_keys=True, separators=(",", ":")).encode()


def make_report(
    command: str,
    inputs: dict,
    seed: int,
    tolerance: float,
    verdicts: dict,
    residuals: dict | None = None,
    certificates: Any = None,
    runtime_seconds: float | None = None,
) -> dict:
    body = {
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "tolerance": tolerance,
        "verdicts": verdicts,
    }
    if residuals is not None:
        body["residuals"] = residuals
    if certificates is not None:
        body["certificates"] = certificates
    report = {
        "schema_version": SCHEMA_VERSION,
        "body": body,
        "body_sha256": hashlib.sha256(body_bytes(body)).hexdigest(),
    }
    if runtime_seconds is not None:
        report["runtime_seconds"] = runtime_seconds
    return report


def hash_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def hash_text(text: str) -> str:
    return hash_bytes(text.encode())
