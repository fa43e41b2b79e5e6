"""Uniform JSON reports for every verification command."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, fields

import numpy as np

STATUSES = ("verified", "refuted", "infeasible", "bound-relative", "error")


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    return obj


@dataclass
class VerificationReport:
    command: str
    instance: dict
    status: str
    witness: object = None
    elapsed_ms: int = 0
    seed: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        return to_jsonable({f.name: getattr(self, f.name) for f in fields(self)})

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


class Timer:
    """Context manager measuring wall time in milliseconds."""

    def __enter__(self):
        self.start = time.perf_counter()
        self.ms = 0
        return self

    def __exit__(self, *exc):
        self.ms = int(round((time.perf_counter() - self.start) * 1000))
        return False
