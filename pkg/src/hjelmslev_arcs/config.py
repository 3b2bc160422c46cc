"""Run configuration: a JSON file plus command-line overrides."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .galois_ring import parse_ring


class ConfigError(ValueError):
    pass


MODES = ("fixed-n", "maximize")


@dataclass
class RunConfig:
    ring: str
    u: list[int]
    group: object = "trivial"  # "trivial", "singer" or a list of 3x3 coefficient arrays
    mode: str = "maximize"
    n: int | None = None
    target: int | None = None  # maximize: stop once an arc this large is found
    multiarc: bool = False
    max_multiplicity: int | None = None
    budget_nodes: int | None = None
    budget_seconds: float | None = None
    workers: int = 1
    out: str = "results"
    extra: dict = field(default_factory=dict)

    def validate(self) -> RunConfig:
        try:
            parse_ring(self.ring)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if isinstance(self.u, int):
            self.u = [self.u]
        if not self.u or any(not isinstance(v, int) or v < 1 for v in self.u):
            raise ConfigError(f"u must be a positive integer or list of them, got {self.u!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.mode == "fixed-n" and (self.n is None or self.n < 0):
            raise ConfigError("fixed-n mode needs a nonnegative n")
        if isinstance(self.group, str) and self.group not in ("trivial", "singer"):
            raise ConfigError(f"unknown group directive {self.group!r}")
        if not isinstance(self.group, (str, list)):
            raise ConfigError("group must be 'trivial', 'singer' or a list of matrices")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.max_multiplicity is not None and self.max_multiplicity < 1:
            raise ConfigError("max_multiplicity must be at least 1")
        return self

    def digest(self) -> str:
        """Hash of everything that determines the result (not paths or worker count)."""
        data = asdict(self)
        for key in ("out", "workers", "extra"):
            data.pop(key)
        data["ring"] = parse_ring(self.ring).to_text()
        blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> dict:
        return asdict(self)


def load_config(path=None, **overrides) -> RunConfig:
    data: dict = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    data.update({k: v for k, v in overrides.items() if v is not None})
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    if "ring" not in data or "u" not in data:
        raise ConfigError("config needs at least 'ring' and 'u'")
    return RunConfig(**data).validate()
