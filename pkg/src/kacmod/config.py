"""Run configuration: defaults, a key=value config file, environment."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields


@dataclass
class Config:
    rank_cap: int = 6
    depth: int = 8
    tol: float = 1e-6
    theta_tol: float = 1e-10
    poisson_tol: float = 1e-8
    phase_tol: float = 1e-10
    threads: int = 1
    output: str = "pretty"  # pretty | json | csv
    sample_tau: complex = 0.37 + 1.13j
    sample_t: complex = 0.05 + 0j

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")
        if self.output not in ("pretty", "json", "csv"):
            raise ValueError(f"unknown output format {self.output!r}")

    @staticmethod
    def load(path=None, **overrides) -> "Config":
        """Defaults < config file (key=value lines) < KACMOD_THREADS < overrides."""
        values = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    key, _, raw = line.partition("=")
                    values[key.strip()] = raw.strip()
        typed = {}
        for f in fields(Config):
            if f.name in values:
                typed[f.name] = _coerce(f.type, values[f.name])
        if "KACMOD_THREADS" in os.environ:
            typed["threads"] = int(os.environ["KACMOD_THREADS"])
        typed.update({k: v for k, v in overrides.items() if v is not None})
        return Config(**typed)


def _coerce(tp, raw):
    name = tp if isinstance(tp, str) else tp.__name__
    if "int" in name:
        return int(raw)
    if "float" in name:
        return float(raw)
    if "complex" in name:
        return complex(raw)
    return raw
