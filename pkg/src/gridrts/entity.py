"""Entities and their state machine vocabulary."""
from __future__ import annotations

from enum import IntEnum

from .units import Archetype


class EntityState(IntEnum):
    SPAWNING = 0
    IDLE = 1
    WALKING = 2
    HARVESTING = 3
    BUILDING = 4
    COMBAT = 5
    DEAD = 6


class TickTimer:
    """Countdown toward an action's effect; fires when remaining hits 0."""

    __slots__ = ("remaining", "total")

    def __init__(self, total: int, remaining: int | None = None):
        if total <= 0:
            raise ValueError("timer total must be positive")
        self.total = total
        self.remaining = total if remaining is None else remaining
        if not 0 <= self.remaining <= total:
            raise ValueError("timer remaining outside [0, total]")

    def __repr__(self):
        return f"TickTimer({self.remaining}/{self.total})"

    def __eq__(self, other):
        return (isinstance(other, TickTimer)
                and self.remaining == other.remaining and self.total == other.total)


class Entity:
    """One unit or building instance.

    The timer is stored flat (``timer_remaining``/``timer_total``) for tick-loop
    speed; ``timer_total == 0`` means no active timer.  ``target_id`` points at
    an enemy (combat) or a building under construction (builder link);
    ``target_tile`` at a resource deposit; ``goal`` is the final walk
    destination so a blocked path can be repaired.
    """

    __slots__ = ("id", "owner", "archetype", "x", "y", "hp", "state",
                 "timer_remaining", "timer_total", "path", "path_i",
                 "goal", "target_id", "target_tile", "stall")

    def __init__(self, eid: int, owner: int, archetype: Archetype, x: int, y: int,
                 state: EntityState = EntityState.IDLE, hp: int | None = None):
        self.id = eid
        self.owner = owner
        self.archetype = archetype
        self.x = x
        self.y = y
        self.hp = archetype.max_hp if hp is None else hp
        self.state = state
        self.timer_remaining = 0
        self.timer_total = 0
        self.path: list[tuple[int, int]] | None = None
        self.path_i = 0
        self.goal: tuple[int, int] | None = None
        self.target_id = -1
        self.target_tile = -1  # flat map index of a resource deposit
        self.stall = 0         # consecutive blocked move attempts

    # -- timer -------------------------------------------------------------

    def start_timer(self, total: int) -> None:
        self.timer_remaining = total
        self.timer_total = total

    def clear_timer(self) -> None:
        self.timer_remaining = 0
        self.timer_total = 0

    @property
    def timer(self) -> TickTimer | None:
        if self.timer_total == 0:
            return None
        return TickTimer(self.timer_total, self.timer_remaining)

    # -- helpers -----------------------------------------------------------

    @property
    def pos(self) -> tuple[int, int]:
        return (self.x, self.y)

    @property
    def alive(self) -> bool:
        return self.state != EntityState.DEAD

    @property
    def is_unit(self) -> bool:
        return self.archetype.kind == "unit"

    def clear_task(self) -> None:
        """Drop path/targets when (re)entering an unengaged state."""
        self.path = None
        self.path_i = 0
        self.goal = None
        self.target_id = -1
        self.target_tile = -1
        self.stall = 0
        self.clear_timer()

    def __repr__(self):
        return (f"Entity(#{self.id} p{self.owner} {self.archetype.name} "
                f"@({self.x},{self.y}) hp={self.hp} {self.state.name})")
