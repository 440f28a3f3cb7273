"""Run configuration: resource caps, defaults, reproducibility seed."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from .core import ValidationError
from .oracle import DEFAULT_CELL_CAP

ENV_CAP = "FSLATTICE_CAP"


@dataclass(frozen=True)
class RunConfig:
    cell_cap: int = DEFAULT_CELL_CAP
    ray_depth: int = 6
    seed: int = 0

    def __post_init__(self) -> None:
        if self.cell_cap < 1 or self.ray_depth < 0:
            raise ValidationError("caps must be positive")

    @classmethod
    def load(cls, path: Optional[str] = None) -> "RunConfig":
        """Optional JSON config file; FSLATTICE_CAP overrides the cell cap."""
        values: dict = {}
        if path is not None:
            data = json.loads(Path(path).read_text())
            known = {f.name for f in fields(cls)}
            unknown = set(data) - known
            if unknown:
                raise ValidationError(f"unknown config keys: {sorted(unknown)}")
            values.update(data)
        env_cap = os.environ.get(ENV_CAP)
        if env_cap is not None:
            values["cell_cap"] = int(env_cap)
        return cls(**values)
