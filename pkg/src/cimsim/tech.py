"""Memristive technology presets (LRS/HRS resistance pairs).

A technology is fully described by its two programmable resistance levels.
Internal unit conventions used throughout the simulator: conductances in uS,
voltages in V, currents in uA. Resistances at this boundary are plain ohms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, ValidationError


@dataclass(frozen=True)
class TechnologyPreset:
    """A binary memristive device technology.

    Cells are programmed to either the low-resistive state (r_lrs) or the
    high-resistive state (r_hrs), both in ohms.
    """

    label: str
    r_lrs: float
    r_hrs: float

    def __post_init__(self):
        if not (self.r_lrs > 0 and self.r_hrs > 0):
            raise ValidationError(f"{self.label}: resistances must be positive")
        if not self.r_lrs < self.r_hrs:
            raise ValidationError(
                f"{self.label}: r_lrs ({self.r_lrs}) must be below r_hrs ({self.r_hrs})"
            )

    @property
    def g_lrs_us(self) -> float:
        """LRS conductance in uS."""
        return 1e6 / self.r_lrs

    @property
    def g_hrs_us(self) -> float:
        """HRS conductance in uS."""
        return 1e6 / self.r_hrs

    def delta_i_ua(self, v_read: float) -> float:
        """Unitary current step in uA: LRS cell current minus HRS cell current.

        One integer unit of a differential dot product corresponds to this
        much column-current difference at the given read voltage.
        """
        if v_read <= 0:
            raise ValidationError("v_read must be positive")
        return v_read * (self.g_lrs_us - self.g_hrs_us)


BUILTIN_PRESETS: dict[str, TechnologyPreset] = {
    p.label: p
    for p in (
        TechnologyPreset("ReRAM-1", 1.00e4, 1.00e5),
        TechnologyPreset("PCM", 4.00e4, 1.76e6),
        TechnologyPreset("ReRAM-2", 5.00e4, 4.00e5),
        TechnologyPreset("Perovskite", 2.00e5, 2.50e6),
        TechnologyPreset("IFG", 1.00e7, 2.00e7),
    )
}


def load_presets(path: str | Path) -> dict[str, TechnologyPreset]:
    """Load technology presets from a JSON file.

    Expected layout: ``{"<label>": {"r_lrs": <ohm>, "r_hrs": <ohm>}, ...}``.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read technology file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"technology file {path}: top level must be an object")
    presets = {}
    for label, entry in raw.items():
        if not isinstance(entry, dict) or "r_lrs" not in entry or "r_hrs" not in entry:
            raise ConfigError(f"technology '{label}': entry needs r_lrs and r_hrs in ohms")
        try:
            presets[label] = TechnologyPreset(label, float(entry["r_lrs"]), float(entry["r_hrs"]))
        except ValidationError as exc:
            raise ConfigError(f"technology '{label}': {exc}") from exc
    return presets


def get_preset(label: str, tech_file: str | Path | None = None) -> TechnologyPreset:
    """Resolve a preset by label, preferring the user file over built-ins."""
    table = dict(BUILTIN_PRESETS)
    if tech_file is not None:
        table.update(load_presets(tech_file))
    try:
        return table[label]
    except KeyError:
        known = ", ".join(sorted(table))
        raise ConfigError(f"unknown technology '{label}' (known: {known})") from None
