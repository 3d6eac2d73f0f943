"""Game state container: players, entities, map, tick counter, RNG state."""
from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

from .config import GameConfig
from .entity import Entity
from .tilemap import TileMap
from .units import Roster


@dataclass
class ResourceBag:
    """A player's economy counters; clamped, never negative."""
    gold: int = 0
    lumber: int = 0
    oil: int = 0
    food_used: int = 0
    food_cap: int = 0
    unit_count: int = 0

    def validate(self, config: GameConfig) -> None:
        cap = config.resource_cap
        for name in ("gold", "lumber", "oil"):
            v = getattr(self, name)
            if not 0 <= v <= cap:
                raise AssertionError(f"{name}={v} outside [0, {cap}]")
        if not 0 <= self.food_used <= config.food_limit:
            raise AssertionError(f"food_used={self.food_used} outside [0, {config.food_limit}]")
        if not 0 <= self.food_cap <= config.food_limit:
            raise AssertionError(f"food_cap={self.food_cap} outside [0, {config.food_limit}]")
        if not 0 <= self.unit_count <= config.unit_limit:
            raise AssertionError(f"unit_count={self.unit_count} outside [0, {config.unit_limit}]")


class Player:
    __slots__ = ("index", "resources", "selected_entity", "score", "alive",
                 "harvested_gold", "harvested_lumber", "harvested_oil",
                 "entity_count")

    def __init__(self, index: int):
        self.index = index
        self.resources = ResourceBag()
        self.selected_entity: int | None = None
        self.score = 0
        self.alive = True
        # Cumulative harvest totals (reward accounting; unaffected by spending)
        self.harvested_gold = 0
        self.harvested_lumber = 0
        self.harvested_oil = 0
        self.entity_count = 0  # live entities incl. buildings

    @property
    def harvested_total(self) -> int:
        return self.harvested_gold + self.harvested_lumber + self.harvested_oil


@dataclass(frozen=True)
class Outcome:
    """Terminal result; winner is None for a draw."""
    winner: int | None


class GameState:
    """The single source of truth for one game.

    Single-writer: all mutation happens through the engine functions on one
    logical thread.  ``copy()`` produces an independent snapshot for
    observers or replay checks.
    """

    __slots__ = ("config", "roster", "map", "players", "entities", "tick",
                 "rng_state", "terminal", "next_entity_id", "_active",
                 "_active_dirty", "_victory_dirty", "_pending_active",
                 "scenario_name")

    def __init__(self, config: GameConfig, roster: Roster, tilemap: TileMap,
                 num_players: int, seed: int, scenario_name: str = "custom"):
        self.config = config
        self.roster = roster
        self.map = tilemap
        self.players = [Player(i) for i in range(num_players)]
        self.entities: dict[int, Entity] = {}
        self.tick = 0
        self.rng_state = seed & ((1 << 64) - 1)
        self.terminal: Outcome | None = None
        self.next_entity_id = 1
        self.scenario_name = scenario_name
        # Entities with running timers, kept in ascending-id order.
        self._active: list[Entity] = []
        self._active_dirty = False
        self._victory_dirty = False
        # Non-None while a tick is being processed: timers started mid-tick
        # are staged so they only begin counting on the following tick.
        self._pending_active: list[Entity] | None = None

    # -- entity bookkeeping --------------------------------------------------

    def entity(self, eid: int) -> Entity:
        try:
            return self.entities[eid]
        except KeyError:
            raise KeyError(f"unknown entity id {eid}") from None

    def entities_of(self, player: int) -> list[Entity]:
        """Live entities owned by ``player``, ascending id."""
        return [e for e in self.entities.values() if e.owner == player]

    def activate(self, entity: Entity) -> None:
        """Register a running timer; keeps the active list id-sorted."""
        if entity in self._active:
            return
        if self._pending_active is not None:
            if entity not in self._pending_active:
                self._pending_active.append(entity)
            return
        lst = self._active
        if not lst or lst[-1].id < entity.id:
            lst.append(entity)
            return
        lo, hi = 0, len(lst)
        while lo < hi:
            mid = (lo + hi) // 2
            if lst[mid].id < entity.id:
                lo = mid + 1
            else:
                hi = mid
        lst.insert(lo, entity)

    def mark_active_dirty(self) -> None:
        self._active_dirty = True

    def sweep_active(self) -> None:
        if self._active_dirty:
            self._active = [e for e in self._active if e.timer_total > 0]
            self._active_dirty = False

    # -- hashing ---------------------------------------------------------------

    def state_hash(self) -> int:
        """Stable 64-bit digest of the full simulation state.

        Covers tick, entities in id order, player economies, map deposit
        levels, and the RNG word, so any divergence between two runs shows
        up at the next checkpoint.
        """
        ints = [self.tick, self.rng_state & ((1 << 63) - 1),
                -2 if self.terminal is None
                else (-1 if self.terminal.winner is None else self.terminal.winner)]
        for eid in sorted(self.entities):
            e = self.entities[eid]
            tt = e.target_tile
            ints += [eid, e.owner, e.archetype.id, e.x, e.y, e.hp, int(e.state),
                     e.timer_remaining, e.timer_total, e.target_id, tt, e.stall,
                     -1 if e.goal is None else e.goal[1] * self.map.width + e.goal[0]]
        for p in self.players:
            r = p.resources
            ints += [r.gold, r.lumber, r.oil, r.food_used, r.food_cap,
                     r.unit_count, p.score, int(p.alive),
                     -1 if p.selected_entity is None else p.selected_entity,
                     p.harvested_gold, p.harvested_lumber, p.harvested_oil]
        payload = struct.pack(f"<{len(ints)}q", *ints)
        payload += struct.pack(f"<{len(self.map.res_amount)}i", *self.map.res_amount)
        return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")

    # -- snapshotting ------------------------------------------------------

    def copy(self) -> "GameState":
        """Deep, independent snapshot (entities, players, and map layers)."""
        new = GameState.__new__(GameState)
        new.config = self.config
        new.roster = self.roster
        new.tick = self.tick
        new.rng_state = self.rng_state
        new.terminal = self.terminal
        new.next_entity_id = self.next_entity_id
        new.scenario_name = self.scenario_name

        new.map = self.map.clone()

        new.players = []
        for p in self.players:
            q = Player(p.index)
            r = p.resources
            q.resources = ResourceBag(r.gold, r.lumber, r.oil,
                                      r.food_used, r.food_cap, r.unit_count)
            q.selected_entity = p.selected_entity
            q.score = p.score
            q.alive = p.alive
            q.harvested_gold = p.harvested_gold
            q.harvested_lumber = p.harvested_lumber
            q.harvested_oil = p.harvested_oil
            q.entity_count = p.entity_count
            new.players.append(q)

        new.entities = {}
        for eid, e in self.entities.items():
            c = Entity(eid, e.owner, e.archetype, e.x, e.y, e.state, e.hp)
            c.timer_remaining = e.timer_remaining
            c.timer_total = e.timer_total
            c.path = list(e.path) if e.path is not None else None
            c.path_i = e.path_i
            c.goal = e.goal
            c.target_id = e.target_id
            c.target_tile = e.target_tile
            c.stall = e.stall
            new.entities[eid] = c

        new._active = [new.entities[e.id] for e in self._active if e.id in new.entities]
        new._active_dirty = self._active_dirty
        new._victory_dirty = self._victory_dirty
        new._pending_active = None
        return new

    def __repr__(self):
        return (f"GameState(tick={self.tick}, players={len(self.players)}, "
                f"entities={len(self.entities)}, terminal={self.terminal})")
