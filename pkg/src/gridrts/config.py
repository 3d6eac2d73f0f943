"""Engine configuration: behaviour flags and numeric knobs.

Every flag can be overridden per game (CLI ``--config key=value``,
scenario files, or the wire protocol's create message).
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

FOOD_LIMIT_MAX = 6000
UNIT_LIMIT_MAX = 2000
RESOURCE_CAP_MAX = 10**6


@dataclass
class GameConfig:
    # Behaviour flags
    instant_town_hall: bool = False
    instant_building: bool = False
    instant_walking: bool = False
    harvest_forever: bool = False
    auto_attack: bool = False
    engage_on_sight: bool = False  # idle units fight adjacent enemies on contact
    durative: bool = True
    pathfinding_enabled: bool = True
    fog_of_war: bool = False

    # Tick constants
    tick_action_cost: int = 10     # ticks per move/attack/harvest cycle
    tick_build_cost: int = 300     # ticks per building construction
    ticks_per_second: int = 10     # real-time pacing multiplier; ignored headless
    tick_limit: int = 10_000       # draw cutoff; scenarios override

    # Player limits
    food_limit: int = FOOD_LIMIT_MAX
    unit_limit: int = UNIT_LIMIT_MAX
    resource_cap: int = RESOURCE_CAP_MAX

    # Starting economy (scenario-tunable)
    start_gold: int = 0
    start_lumber: int = 0
    start_oil: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not 0 < self.tick_action_cost <= self.tick_build_cost:
            raise ValueError(
                f"need 0 < tick_action_cost <= tick_build_cost, got "
                f"{self.tick_action_cost} / {self.tick_build_cost}"
            )
        if self.ticks_per_second <= 0:
            raise ValueError("ticks_per_second must be positive")
        if self.tick_limit <= 0:
            raise ValueError("tick_limit must be positive")
        if not 0 <= self.food_limit <= FOOD_LIMIT_MAX:
            raise ValueError(f"food_limit outside [0, {FOOD_LIMIT_MAX}]")
        if not 0 <= self.unit_limit <= UNIT_LIMIT_MAX:
            raise ValueError(f"unit_limit outside [0, {UNIT_LIMIT_MAX}]")
        if not 0 <= self.resource_cap <= RESOURCE_CAP_MAX:
            raise ValueError(f"resource_cap outside [0, {RESOURCE_CAP_MAX}]")
        for field in ("start_gold", "start_lumber", "start_oil"):
            if not 0 <= getattr(self, field) <= self.resource_cap:
                raise ValueError(f"{field} outside [0, resource_cap]")

    @property
    def walk_instant(self) -> bool:
        """Non-durative mode implies instant walking."""
        return self.instant_walking or not self.durative

    @property
    def build_instant(self) -> bool:
        """Non-durative mode implies instant building."""
        return self.instant_building or not self.durative

    def move_ticks(self, speed_cost: int | None = None) -> int:
        """Timer for one tile of movement; archetypes may override the cost."""
        if self.walk_instant:
            return 1
        return speed_cost if speed_cost is not None else self.tick_action_cost

    def cycle_ticks(self) -> int:
        """Timer for one attack or harvest cycle."""
        return 1 if not self.durative else self.tick_action_cost

    def build_ticks(self, kind: str) -> int:
        """Construction timer: buildings take tick_build_cost, units a tenth."""
        if self.build_instant:
            return 1
        return self.tick_build_cost if kind == "building" else max(1, self.tick_build_cost // 10)

    def with_overrides(self, overrides: dict) -> "GameConfig":
        """Return a copy with the given fields replaced. Unknown keys raise."""
        if not overrides:
            return self
        valid = {f.name for f in fields(self)}
        unknown = set(overrides) - valid
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return replace(self, **{k: _coerce(k, v) for k, v in overrides.items()})


_BOOL_FIELDS = {
    "instant_town_hall", "instant_building", "instant_walking",
    "harvest_forever", "auto_attack", "engage_on_sight", "durative",
    "pathfinding_enabled", "fog_of_war",
}


def _coerce(key: str, value):
    """Coerce a CLI/file string into the field's type."""
    if key in _BOOL_FIELDS:
        if isinstance(value, bool):
            return value
        if isinstance(value, str):
            low = value.strip().lower()
            if low in ("true", "1", "yes", "on"):
                return True
            if low in ("false", "0", "no", "off"):
                return False
            raise ValueError(f"cannot parse boolean for {key}: {value!r}")
        return bool(value)
    return int(value)


def parse_config_kv(pairs: list[str]) -> dict:
    """Parse repeated ``key=value`` strings into an override dict."""
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"expected key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        overrides[key.strip()] = value.strip()
    return overrides
