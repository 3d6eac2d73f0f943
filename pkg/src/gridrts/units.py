"""Archetype roster loaded from the bundled stats file."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import yaml

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@dataclass(frozen=True)
class Archetype:
    """Static stats shared by all entities of one type."""
    id: int
    name: str
    kind: str                      # "unit" | "building"
    max_hp: int
    attack_damage: int = 0
    speed_cost: int | None = None  # per-unit move-cost override; None = config default
    vision_radius: int = 5
    gold_cost: int = 0
    lumber_cost: int = 0
    food_cost: int = 0             # units only
    food_provided: int = 0         # buildings only
    builds: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.max_hp <= 0:
            raise ValueError(f"{self.name}: max_hp must be positive")
        if min(self.gold_cost, self.lumber_cost, self.food_cost, self.food_provided) < 0:
            raise ValueError(f"{self.name}: costs must be >= 0")
        if self.kind == "building" and self.speed_cost is not None:
            raise ValueError(f"{self.name}: buildings have no speed_cost")
        if self.kind == "unit" and self.food_provided:
            raise ValueError(f"{self.name}: units cannot provide food")
        if self.kind not in ("unit", "building"):
            raise ValueError(f"{self.name}: unknown kind {self.kind!r}")

    @property
    def is_unit(self) -> bool:
        return self.kind == "unit"


class Roster:
    """All archetypes plus the scoring/economy constants, by stable id."""

    def __init__(self, archetypes: list[Archetype], constants: dict):
        self.archetypes = archetypes
        self.by_name = {a.name: a for a in archetypes}
        self.harvest_yield = int(constants.get("harvest_yield", 10))
        self.build_score_divisor = int(constants.get("build_score_divisor", 10))
        for a in archetypes:
            for b in a.builds:
                if b not in self.by_name:
                    raise ValueError(f"{a.name} builds unknown archetype {b!r}")

    def __getitem__(self, name: str) -> Archetype:
        return self.by_name[name]

    def __iter__(self):
        return iter(self.archetypes)

    def build_score(self, building: Archetype) -> int:
        return building.gold_cost // self.build_score_divisor


def load_roster(path: str | None = None) -> Roster:
    path = path or os.path.join(DATA_DIR, "units.yaml")
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    archetypes = []
    for i, raw in enumerate(doc["archetypes"]):
        raw = dict(raw)
        raw["builds"] = tuple(raw.get("builds", ()))
        archetypes.append(Archetype(id=i, **raw))
    return Roster(archetypes, doc.get("constants", {}))


_default_roster: Roster | None = None


def default_roster() -> Roster:
    """The bundled roster, loaded once."""
    global _default_roster
    if _default_roster is None:
        _default_roster = load_roster()
    return _default_roster
