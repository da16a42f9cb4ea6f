"""Run configuration shared by the CLI and the verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import tolerances
from .errors import InputError
from .reps import FLAVORS, UNITARY

_TOLERANCE_NAMES = ("construction", "verification", "fd", "svd")


@dataclass(frozen=True)
class RunConfig:
    """Deterministic configuration: identical configs give identical runs."""

    genus: int = 2
    rank: int = 2
    flavor: str = UNITARY
    seed: int = 0
    tolerance_overrides: tuple[tuple[str, float], ...] = ()
    out: Path = field(default_factory=Path.cwd)
    parallel: bool = False
    mutate: str | None = None

    def __post_init__(self):
        if self.genus < 1:
            raise InputError(f"genus must be >= 1, got {self.genus}")
        if self.rank < 1:
            raise InputError(f"rank must be >= 1, got {self.rank}")
        if self.flavor not in FLAVORS:
            raise InputError(f"unknown flavor {self.flavor!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise InputError("seed must be an unsigned 64-bit integer")
        for name, value in self.tolerance_overrides:
            if name not in _TOLERANCE_NAMES:
                raise InputError(f"unknown tolerance {name!r} "
                                 f"(known: {', '.join(_TOLERANCE_NAMES)})")
            if not value > 0:
                raise InputError(f"tolerance {name} must be positive, got {value}")
        object.__setattr__(self, "out", Path(self.out))

    def tolerance(self, name: str) -> float:
        defaults = {
            "construction": tolerances.CONSTRUCTION,
            "verification": tolerances.VERIFICATION,
            "fd": tolerances.FINITE_DIFFERENCE,
            "svd": tolerances.SVD_RELATIVE,
        }
        for key, value in self.tolerance_overrides:
            if key == name:
                return value
        return defaults[name]

    def describe(self) -> str:
        parts = [f"genus={self.genus}", f"rank={self.rank}",
                 f"flavor={self.flavor}", f"seed={self.seed}"]
        for name, value in self.tolerance_overrides:
            parts.append(f"tol.{name}={value:g}")
        if self.mutate:
            parts.append(f"mutate={self.mutate}")
        return " ".join(parts)
