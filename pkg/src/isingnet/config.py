"""Runtime settings: enumeration cap, PRNG name and output defaults.

Settings load from the JSON file named by ``ISINGNET_CONFIG`` if it is set,
otherwise defaults apply.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

ENV_VAR = "ISINGNET_CONFIG"
PRNG_NAME = "PCG64"


@dataclass(frozen=True)
class Settings:
    enumeration_cap: int = 26
    prng_name: str = PRNG_NAME
    default_confidence: float = 0.95
    output_dir: str = "."

    def __post_init__(self):
        if int(self.enumeration_cap) < 1:
            raise ValueError("enumeration_cap must be >= 1")
        if self.prng_name != PRNG_NAME:
            raise ValueError(f"unsupported PRNG {self.prng_name!r}; only {PRNG_NAME} is available")
        if not 0 < float(self.default_confidence) < 1:
            raise ValueError("default_confidence must lie in (0, 1)")


_current: Settings | None = None


def load(path: str | os.PathLike | None = None) -> Settings:
    path = path if path is not None else os.environ.get(ENV_VAR)
    if not path:
        return Settings()
    data = json.loads(Path(path).read_text())
    known = {f.name for f in dataclasses.fields(Settings)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown settings keys: {sorted(unknown)}")
    return Settings(**data)


def get() -> Settings:
    global _current
    if _current is None:
        _current = load()
    return _current


def update(settings: Settings | None = None, **changes) -> Settings:
    """Replace the active settings; keyword changes apply on top."""
    global _current
    base = settings if settings is not None else get()
    _current = dataclasses.replace(base, **changes)
    return _current


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def derive_seed(*keys: int) -> int:
    """A 64-bit seed derived deterministically from integer keys."""
    state = np.random.SeedSequence([int(k) for k in keys]).generate_state(1, np.uint64)
    return int(state[0])
