"""The scenario suite: nine bundled definitions plus custom scenario files.

A scenario bundles a map, player count, objective, per-step reward rule,
and termination rule.  Custom scenarios are YAML files with the same
fields as the bundled ones (``name``, ``map``, ``players``, ``objective``,
optional ``episode_ticks``, ``expected_length``, ``config``).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import yaml

from .engine import ScenarioError
from .state import GameState
from .tilemap import TileMap, load_map

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
SCENARIO_DIR = os.path.join(DATA_DIR, "scenarios")

OBJECTIVES = ("last_man_standing", "score", "resources", "army")


@dataclass
class ScenarioSpec:
    name: str
    map_path: str
    players: int
    objective: str
    episode_ticks: int | None = None
    expected_length: tuple[int, int] | None = None  # telemetry only
    config_overrides: dict = field(default_factory=dict)
    _template: TileMap | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ScenarioError(f"unknown objective {self.objective!r}")
        if self.players < 1:
            raise ScenarioError("players must be >= 1")

    def fresh_map(self) -> TileMap:
        """An independent TileMap copy (games mutate deposits/occupancy)."""
        if self._template is None:
            self._template = load_map(self.map_path)
        return self._template.clone()

    @property
    def map_size(self) -> tuple[int, int]:
        if self._template is None:
            self._template = load_map(self.map_path)
        return (self._template.width, self._template.height)


def _scan_bundled() -> dict[str, str]:
    names = {}
    for fn in sorted(os.listdir(SCENARIO_DIR)):
        if fn.endswith(".yaml"):
            names[fn[:-5]] = os.path.join(SCENARIO_DIR, fn)
    return names


_registry: dict[str, str] | None = None


def scenario_names() -> list[str]:
    """Bundled scenario names, FFA ladder first, then the solo drills."""
    global _registry
    if _registry is None:
        _registry = _scan_bundled()
    order = ["10x10-2-FFA", "15x15-2-FFA", "21x21-2-FFA", "31x31-2-FFA",
             "31x31-4-FFA", "31x31-6-FFA", "solo-score", "solo-resources",
             "solo-army"]
    return [n for n in order if n in _registry] + \
           sorted(set(_registry) - set(order))


def load_scenario(name_or_path: str) -> ScenarioSpec:
    """Resolve a registered name or a path to a custom scenario file."""
    global _registry
    if _registry is None:
        _registry = _scan_bundled()
    if name_or_path in _registry:
        path = _registry[name_or_path]
    elif os.path.exists(name_or_path):
        path = name_or_path
    else:
        known = ", ".join(scenario_names())
        raise ScenarioError(f"unknown scenario {name_or_path!r} (known: {known})")
    return _parse_scenario_file(path)


def _parse_scenario_file(path: str) -> ScenarioSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"malformed scenario file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"malformed scenario file {path}: not a mapping")
    for key in ("name", "map", "players", "objective"):
        if key not in doc:
            raise ScenarioError(f"scenario file {path} missing field {key!r}")
    map_path = doc["map"]
    if not os.path.isabs(map_path):
        # relative to the scenario file, falling back to the bundled data dir
        local = os.path.join(os.path.dirname(path), map_path)
        map_path = local if os.path.exists(local) else os.path.join(DATA_DIR, map_path)
    if not os.path.exists(map_path):
        raise ScenarioError(f"scenario {doc['name']}: map file {map_path} not found")
    expected = doc.get("expected_length")
    return ScenarioSpec(
        name=str(doc["name"]),
        map_path=map_path,
        players=int(doc["players"]),
        objective=str(doc["objective"]),
        episode_ticks=None if doc.get("episode_ticks") is None else int(doc["episode_ticks"]),
        expected_length=None if expected is None else (int(expected[0]), int(expected[1])),
        config_overrides=dict(doc.get("config") or {}),
    )


# ---------------------------------------------------------------------------
# Rewards and termination
# ---------------------------------------------------------------------------

def military_count(state: GameState, player: int) -> int:
    """Live combat units (attack-capable, non-harvester)."""
    return sum(1 for e in state.entities.values()
               if e.owner == player and e.archetype.is_unit
               and e.archetype.attack_damage > 0 and not e.archetype.builds)


def scenario_reward(spec: ScenarioSpec, prev, next_state: GameState, player: int) -> float:
    """Per-step reward between two consecutive states.

    ``prev`` only needs the per-player metrics (a full GameState or a
    metrics snapshot both work).
    """
    if spec.objective == "last_man_standing":
        became_terminal = getattr(prev, "terminal", None) is None \
            and next_state.terminal is not None
        if not became_terminal:
            return 0.0
        winner = next_state.terminal.winner
        if winner == player:
            return 1.0
        if winner is None and next_state.players[player].alive:
            return 0.0
        return -1.0
    if spec.objective == "score":
        return float(next_state.players[player].score - prev.players[player].score)
    if spec.objective == "resources":
        return float(next_state.players[player].harvested_total
                     - prev.players[player].harvested_total)
    # army
    prev_count = getattr(prev, "military", None)
    if prev_count is None:
        prev_count = military_count(prev, player)
    else:
        prev_count = prev_count[player]
    return float(military_count(next_state, player) - prev_count)


def scenario_done(spec: ScenarioSpec, state: GameState) -> bool:
    if state.terminal is not None:
        return True
    if spec.episode_ticks is not None and state.tick >= spec.episode_ticks:
        return True
    return False


class MetricsSnapshot:
    """Cheap stand-in for a previous GameState in reward computations."""

    __slots__ = ("terminal", "players", "military")

    class _P:
        __slots__ = ("score", "harvested_total", "alive")

        def __init__(self, score, harvested_total, alive):
            self.score = score
            self.harvested_total = harvested_total
            self.alive = alive

    def __init__(self, state: GameState, with_military: bool = False):
        self.terminal = state.terminal
        self.players = [self._P(p.score, p.harvested_total, p.alive)
                        for p in state.players]
        if with_military:
            self.military = [military_count(state, i)
                             for i in range(len(state.players))]
