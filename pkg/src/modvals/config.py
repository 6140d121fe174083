"""Level configuration files and cached basis families."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .basis import BasisFamily, GeneratorSpec, build_basis
from .modcurve import level_data

__all__ = ["ConfigError", "LevelConfig", "family", "load_level", "shipped_levels"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class LevelConfig:
    level: int
    genus_hint: int | None
    precision: int
    generators: tuple
    order_table: dict = field(default_factory=dict)
    source: str = ""

    def __hash__(self):
        return hash((self.level, self.source))

    @classmethod
    def from_dict(cls, data: dict, source: str = "") -> "LevelConfig":
        try:
            level = int(data["level"])
            gens = tuple(GeneratorSpec.from_config(g) for g in data["generators"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed level config {source}: {exc}") from exc
        hint = data.get("genus_hint")
        if hint is not None and int(hint) != level_data(level).genus:
            raise ConfigError(f"genus hint {hint} disagrees with the genus of X0({level})")
        return cls(level, hint, int(data.get("precision", 60)), gens, data.get("order_table", {}), source)

    def build(self, prec: int | None = None, m_max: int = 20) -> BasisFamily:
        return build_basis(self.level, self.generators, prec or self.precision, m_max)


def shipped_levels() -> list[int]:
    out = []
    for entry in resources.files("modvals").joinpath("levels").iterdir():
        name = entry.name
        if name.startswith("level_") and name.endswith(".json"):
            out.append(int(name[6:-5]))
    return sorted(out)


@lru_cache(maxsize=None)
def load_level(ref) -> LevelConfig:
    """Load a shipped level by number or any config file by path."""
    if isinstance(ref, int) or (isinstance(ref, str) and ref.isdigit()):
        n = int(ref)
        res = resources.files("modvals").joinpath("levels", f"level_{n:02d}.json")
        if not res.is_file():
            raise ConfigError(f"no shipped configuration for level {n}")
        return LevelConfig.from_dict(json.loads(res.read_text()), f"level_{n:02d}.json")
    path = Path(ref)
    if not path.is_file():
        raise ConfigError(f"config file not found: {ref}")
    return LevelConfig.from_dict(json.loads(path.read_text()), str(path))


@lru_cache(maxsize=32)
def family(ref, prec: int = 60, m_max: int = 20) -> BasisFamily:
    """Basis family for a level, built once per (level, prec, m_max)."""
    return load_level(ref).build(prec, m_max)
