"""Rotation-ratio comparison against other fluid-driven twisting actuators."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

TABLE2 = Path(__file__).parent / "data" / "table2.csv"


@dataclass(frozen=True)
class ComparisonRow:
    """One actuator in the comparison.

    ``E_r`` is always recomputed as rotation over aspect ratio.  When the
    aspect ratio is only a lower bound, ``E_r`` is the matching upper bound.
    """

    name: str
    rotation_deg: float
    aspect_ratio: float
    pressure_change_kpa: float = math.nan
    approx: bool = False
    aspect_bound: str = ""
    printed_E_r: float = math.nan

    def __post_init__(self):
        if not self.aspect_ratio > 0:
            raise ConfigError(f"{self.name}: aspect_ratio={self.aspect_ratio!r} violates rule 'aspect ratio > 0'")
        if self.aspect_bound not in ("", "<", ">"):
            raise ConfigError(f"{self.name}: aspect_bound={self.aspect_bound!r} must be '', '<' or '>'")

    @property
    def E_r(self) -> float:
        return self.rotation_deg / self.aspect_ratio

    @property
    def E_r_bound(self) -> str:
        return {"": "", ">": "<", "<": ">"}[self.aspect_bound]

    @property
    def exact(self) -> bool:
        """True unless a value is only a bound."""
        return not self.aspect_bound


def _float(text: str) -> float:
    return float(text) if text.strip() else math.nan


def load_comparison(path=None) -> list:
    path = Path(path) if path else TABLE2
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        for lineno, rec in enumerate(reader, start=2):
            try:
                rows.append(ComparisonRow(
                    name=rec["name"],
                    rotation_deg=float(rec["rotation_deg"]),
                    aspect_ratio=float(rec["aspect_ratio"]),
                    pressure_change_kpa=_float(rec.get("pressure_change_kpa") or ""),
                    approx=any(rec.get(k, "0") == "1" for k in
                               ("rotation_approx", "aspect_approx", "pressure_approx")),
                    aspect_bound=(rec.get("aspect_bound") or "").strip(),
                    printed_E_r=_float(rec.get("printed_E_r") or ""),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"{path}: bad comparison row {lineno}: {exc}") from None
    if not rows:
        raise ConfigError(f"{path}: no comparison rows")
    return rows
