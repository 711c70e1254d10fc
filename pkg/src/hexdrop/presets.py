"""Named channel environments for the IEEE 802.20 (MBWA) band plan.

Each preset carries the fitted intercept (with r in metres), decade
slope, shadowing deviation, close-in distance and the cell radius range
its propagation model was fitted for.  The assumed carrier frequency,
1.9 GHz, is metadata only: it enters no computation here.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from .density import DensityModel
from .pathloss import PathLossParams

CARRIER_FREQUENCY_GHZ = 1.9


class UnknownPresetError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelPreset:
    name: str
    alpha_prime_db: float
    beta_db_per_decade: float
    sigma_psi_db: float
    r0_m: float
    cell_radius_min_m: float
    cell_radius_max_m: float
    model_label: str

    def pathloss_params(self) -> PathLossParams:
        return PathLossParams.from_intercept(
            self.alpha_prime_db, self.beta_db_per_decade, self.r0_m, self.sigma_psi_db
        )

    def density_model(self, side: float) -> DensityModel:
        return DensityModel(side=side, pathloss=self.pathloss_params())


# name              alpha'  beta  sigma  r0   radius range [m]   model
_TABLE = [
    ("suburban-macro", 31.5, 35.0, 10.0, 35.0, 600.0, 3500.0, "COST-231 Hata-Model"),
    ("urban-macro", 34.5, 35.0, 10.0, 35.0, 600.0, 3500.0, "COST-231 Hata-Model"),
    ("urban-micro-nlos", 34.53, 38.0, 10.0, 20.0, 200.0, 300.0, "COST-231 Walfish-Ikegami"),
    ("urban-micro-los", 30.18, 26.0, 4.0, 20.0, 200.0, 300.0, "COST-231 Walfish-Ikegami"),
]

BUILTIN_PRESETS: dict[str, ChannelPreset] = {
    row[0]: ChannelPreset(*row) for row in _TABLE
}


def preset_names() -> list[str]:
    return list(BUILTIN_PRESETS)


def load_preset(name: str, path: str | Path | None = None) -> ChannelPreset:
    """Look up a preset by name, optionally from a JSON override file."""
    table = read_presets_file(path) if path is not None else BUILTIN_PRESETS
    try:
        return table[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; valid names: {', '.join(table)}"
        ) from None


def validate_cell_radius(preset: ChannelPreset, side: float) -> bool:
    """True iff the cell side lies in the preset's fitted radius range."""
    if not side > 0.0:
        raise ValueError(f"side must be positive, got {side}")
    return preset.cell_radius_min_m <= side <= preset.cell_radius_max_m


def read_presets_file(path: str | Path) -> dict[str, ChannelPreset]:
    """Load presets from a JSON file (a list of preset objects)."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    presets = {}
    for entry in data:
        preset = ChannelPreset(**entry)
        presets[preset.name] = preset
    return presets


def write_presets_file(path: str | Path, presets: dict[str, ChannelPreset] | None = None) -> None:
    """Serialise presets (builtin by default) to the JSON preset format."""
    table = BUILTIN_PRESETS if presets is None else presets
    payload = [asdict(p) for p in table.values()]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
