"""Deterministic tick-loop simulation core.

Per tick: the counter advances, every running tick-timer decrements, timers
reaching zero fire their effect (one move step, one attack, one harvest
deposit, one construction completion), state machines re-evaluate, and the
victory condition is checked.  Combat swings due on the same tick resolve
simultaneously against start-of-tick positions (perfectly synced duels can
end in a mutual kill); deaths and all other same-tick effects then resolve
in a fixed deterministic order, so identical inputs always produce
identical state hashes.

The core loop never draws randomness; the RNG word in the state exists for
map decoration and agents.
"""
from __future__ import annotations

import warnings

from .actions import BUILD_ACTIONS, MOVE_DIRS, PrimitiveAction, can_harvest
from .config import GameConfig
from .entity import Entity, EntityState
from .pathfinding import _jps8
from .state import GameState, Outcome, Player
from .tilemap import (DIRS8, GRASS, RES_GOLD, RES_LUMBER, RES_OIL, TileMap,
                      chebyshev)
from .units import Archetype, default_roster

_SPAWNING = EntityState.SPAWNING
_IDLE = EntityState.IDLE
_WALKING = EntityState.WALKING
_HARVESTING = EntityState.HARVESTING
_BUILDING = EntityState.BUILDING
_COMBAT = EntityState.COMBAT
_DEAD = EntityState.DEAD

_RES_ATTR = {RES_GOLD: "gold", RES_LUMBER: "lumber", RES_OIL: "oil"}
_HARVESTED_ATTR = {RES_GOLD: "harvested_gold", RES_LUMBER: "harvested_lumber",
                   RES_OIL: "harvested_oil"}


class ScenarioError(ValueError):
    pass


class TerminalTickWarning(RuntimeWarning):
    """Raised (as a warning) when a finished game is ticked again."""


# ---------------------------------------------------------------------------
# Game construction
# ---------------------------------------------------------------------------

def new_game(config: GameConfig, scenario, seed: int) -> GameState:
    """Fresh deterministic state: one Worker per player, per the scenario map.

    ``scenario`` may be a ScenarioSpec or a bare TileMap (then the player
    count comes from the map's spawn list).
    """
    if isinstance(scenario, TileMap):
        tilemap, players, name = scenario, len(scenario.spawns), "custom"
    else:
        tilemap, players, name = scenario.fresh_map(), scenario.players, scenario.name
    if players < 1:
        raise ScenarioError("scenario needs at least one player spawn")
    if len(tilemap.spawns) < players:
        raise ScenarioError(
            f"map provides {len(tilemap.spawns)} spawns for {players} players")

    state = GameState(config, default_roster(), tilemap, players, seed, name)
    worker = state.roster["Worker"]
    hall = state.roster["TownHall"]
    for p in state.players:
        bag = p.resources
        bag.gold = config.start_gold
        bag.lumber = config.start_lumber
        bag.oil = config.start_oil

    for idx in range(players):
        sx, sy = tilemap.spawns[idx]
        if not tilemap.walkable(sx, sy):
            raise ScenarioError(f"spawn tile ({sx},{sy}) for player {idx} is not walkable")
        if tilemap.occupant[tilemap.index(sx, sy)] >= 0:
            raise ScenarioError(f"spawn tile ({sx},{sy}) already occupied")
        w = _spawn_entity(state, idx, worker, sx, sy, construction_ticks=None)
        state.players[idx].selected_entity = w.id
        if config.instant_town_hall:
            spot = _free_neighbor_tile(tilemap, sx, sy)
            if spot is None:
                raise ScenarioError(
                    f"no free tile adjacent to ({sx},{sy}) for player {idx}'s town hall")
            _spawn_entity(state, idx, hall, spot[0], spot[1], construction_ticks=None)
    return state


def _spawn_entity(state: GameState, owner: int, arche: Archetype, x: int, y: int,
                  construction_ticks: int | None) -> Entity:
    m = state.map
    i = m.index(x, y)
    if m.blocked[i] or m.occupant[i] >= 0:
        raise ScenarioError(f"cannot place {arche.name} on tile ({x},{y})")
    eid = state.next_entity_id
    state.next_entity_id += 1
    e = Entity(eid, owner, arche, x, y)
    state.entities[eid] = e
    m.occupant[i] = eid
    if not arche.is_unit:
        m.blocked[i] = True  # building footprint obstructs paths

    p = state.players[owner]
    p.entity_count += 1
    if arche.is_unit:
        p.resources.unit_count += 1
        p.resources.food_used += arche.food_cost

    if construction_ticks is None:
        e.state = _IDLE
        _apply_completion_effects(state, e)
    else:
        e.state = _SPAWNING
        e.start_timer(construction_ticks)
        state.activate(e)
    return e


def _apply_completion_effects(state: GameState, e: Entity) -> None:
    if not e.archetype.is_unit and e.archetype.food_provided:
        bag = state.players[e.owner].resources
        bag.food_cap = min(state.config.food_limit, bag.food_cap + e.archetype.food_provided)


def _free_neighbor_tile(m: TileMap, x: int, y: int) -> tuple[int, int] | None:
    for dx, dy in DIRS8:
        if m.free(x + dx, y + dy):
            return (x + dx, y + dy)
    return None


# ---------------------------------------------------------------------------
# The tick
# ---------------------------------------------------------------------------

def tick(state: GameState) -> GameState:
    """Advance the simulation by exactly one tick (mutates and returns state)."""
    if state.terminal is not None:
        warnings.warn("tick on a terminal state is a no-op", TerminalTickWarning,
                      stacklevel=2)
        return state
    state.tick += 1

    active = state._active
    if active:
        # Timers started by effects during this tick begin counting next tick.
        state._pending_active = []
        dirty = False
        fired = None
        for e in active:
            total = e.timer_total
            if total == 0:
                dirty = True
                continue
            r = e.timer_remaining - 1
            if r > 0:
                e.timer_remaining = r
                continue
            e.timer_remaining = 0
            if fired is None:
                fired = [e]
            else:
                fired.append(e)
        if fired is not None:
            # Combat first, resolved simultaneously against start-of-tick
            # positions; then movement/harvest/construction effects.  The
            # movement pass alternates direction every action cycle so the
            # within-tick first-mover edge cancels out between players.
            if any(e.state == _COMBAT for e in fired):
                _resolve_combat(state, fired)
            if (state.tick // state.config.tick_action_cost) & 1:
                fired.reverse()
            for e in fired:
                if e.state != _DEAD and e.timer_total > 0 and e.timer_remaining == 0:
                    _fire(state, e)
            dirty = True
        if dirty or state._active_dirty:
            state._active = [e for e in active if e.timer_total > 0]
            state._active_dirty = False
        pending = state._pending_active
        state._pending_active = None
        for e in pending:
            if e.timer_total > 0:
                state.activate(e)

    if state._victory_dirty:
        state._victory_dirty = False
        outcome = _victory(state)
        if outcome is not None:
            state.terminal = outcome
            return state
    if state.tick >= state.config.tick_limit:
        state.terminal = Outcome(None)
    return state


def _fire(state: GameState, e: Entity) -> None:
    s = e.state
    if s == _WALKING:
        _walk_step(state, e)
    elif s == _HARVESTING:
        harvest_cycle(state, e.id)
    elif s == _COMBAT:
        attack_cycle(state, e.id)
    elif s == _SPAWNING:
        _complete_spawn(state, e)
    else:
        e.clear_timer()


def _victory(state: GameState) -> Outcome | None:
    alive = [p.index for p in state.players if p.entity_count > 0]
    if len(state.players) == 1:
        return Outcome(None) if not alive else None
    if len(alive) == 1:
        return Outcome(alive[0])
    if not alive:
        return Outcome(None)
    return None


def is_terminal(state: GameState) -> Outcome | None:
    """Victory/draw evaluation; solo scenarios defer to the scenario rule."""
    if state.terminal is not None:
        return state.terminal
    outcome = _victory(state)
    if outcome is not None:
        return outcome
    if state.tick >= state.config.tick_limit:
        return Outcome(None)
    return None


# ---------------------------------------------------------------------------
# Timer effects
# ---------------------------------------------------------------------------

def _walk_step(state: GameState, e: Entity) -> None:
    # arrival by adjacency beats taking another step
    if _try_engage(state, e):
        return
    m = state.map
    nxt = None
    if e.path is not None and e.path_i < len(e.path):
        nxt = e.path[e.path_i]
    elif e.goal is not None:
        nxt = _greedy_step(m, e.x, e.y, e.goal[0], e.goal[1])

    if nxt is None:
        _finish_walk(state, e)
        return

    nx, ny = nxt
    i = ny * m.width + nx
    if not m.blocked[i] and m.occupant[i] < 0:
        m.occupant[e.y * m.width + e.x] = -1
        m.occupant[i] = e.id
        e.x, e.y = nx, ny
        e.stall = 0
        if e.path is not None:
            e.path_i += 1
        if state.config.engage_on_sight:
            _provoke_bystanders(state, e)
        if _try_engage(state, e):
            return
        if (e.path is not None and e.path_i >= len(e.path)) or (e.x, e.y) == e.goal:
            _finish_walk(state, e)
            return
        e.start_timer(state.config.move_ticks(e.archetype.speed_cost))
        return

    # Blocked: lazy repair.  Paths ignore units, so a repair routes around
    # whatever is parked there now; if the jam is total the unit keeps
    # retrying on its move cadence.
    e.stall += 1
    if state.config.pathfinding_enabled and e.goal is not None:
        path = _jps8(m.walkable, (e.x, e.y), e.goal)
        if not path:
            _finish_walk(state, e)
            return
        e.path = path
        e.path_i = 0
    e.start_timer(state.config.move_ticks(e.archetype.speed_cost))


def _try_engage(state: GameState, e: Entity) -> bool:
    """Switch to Harvesting/Combat when the walk target is in reach."""
    if e.target_tile >= 0:
        m = state.map
        tx, ty = e.target_tile % m.width, e.target_tile // m.width
        if m.res_amount[e.target_tile] <= 0:
            # deposit ran out while en route
            _after_harvest_exhausted(state, e)
            return True
        if chebyshev(e.x, e.y, tx, ty) <= 1:
            e.state = _HARVESTING
            e.path = None
            e.path_i = 0
            e.goal = None
            e.start_timer(state.config.cycle_ticks())
            return True
        return False
    if e.target_id >= 0:
        target = state.entities.get(e.target_id)
        if target is None:
            _finish_walk(state, e)
            return True
        if chebyshev(e.x, e.y, target.x, target.y) <= 1:
            e.state = _COMBAT
            e.path = None
            e.path_i = 0
            e.goal = None
            e.start_timer(state.config.cycle_ticks())
            return True
    return False


def _finish_walk(state: GameState, e: Entity) -> None:
    e.state = _IDLE
    e.clear_task()
    state.mark_active_dirty()
    if state.config.engage_on_sight:
        _engage_adjacent(state, e)


def _engage_adjacent(state: GameState, e: Entity) -> None:
    """Contact aggression: an idle combat-capable unit hunts the nearest
    enemy inside its vision radius."""
    if e.state != _IDLE or not e.archetype.is_unit or e.archetype.attack_damage <= 0:
        return
    radius = e.archetype.vision_radius
    best = None
    best_key = None
    for other in state.entities.values():
        if other.owner == e.owner:
            continue
        d = chebyshev(e.x, e.y, other.x, other.y)
        if d <= radius and (best_key is None or (d, other.id) < best_key):
            best, best_key = other, (d, other.id)
    if best is None:
        return
    e.state = _COMBAT
    e.target_id = best.id
    e.start_timer(state.config.cycle_ticks())
    state.activate(e)


def _provoke_bystanders(state: GameState, mover: Entity) -> None:
    """Idle enemies adjacent to a freshly arrived unit engage it."""
    m = state.map
    for dx, dy in DIRS8:
        nx, ny = mover.x + dx, mover.y + dy
        if not (0 <= nx < m.width and 0 <= ny < m.height):
            continue
        occ = m.occupant[ny * m.width + nx]
        if occ < 0:
            continue
        other = state.entities.get(occ)
        if (other is not None and other.owner != mover.owner
                and other.state == _IDLE and other.archetype.is_unit
                and other.archetype.attack_damage > 0):
            other.state = _COMBAT
            other.target_id = mover.id
            other.start_timer(state.config.cycle_ticks())
            state.activate(other)


def _greedy_step(m: TileMap, x: int, y: int, gx: int, gy: int) -> tuple[int, int] | None:
    dx = (gx > x) - (gx < x)
    dy = (gy > y) - (gy < y)
    if dx == 0 and dy == 0:
        return None
    for cx, cy in ((x + dx, y + dy), (x + dx, y), (x, y + dy)):
        if (cx, cy) != (x, y) and m.free(cx, cy):
            return (cx, cy)
    return None


def harvest_cycle(state: GameState, worker_id: int) -> GameState:
    """One harvest deposit: move up to one yield from the tile to the player."""
    e = state.entity(worker_id)
    m = state.map
    i = e.target_tile
    amount = m.res_amount[i] if i >= 0 else 0
    if amount <= 0:
        _after_harvest_exhausted(state, e)
        return state

    taken = min(state.roster.harvest_yield, amount)
    kind = m.res_kind[i]
    p = state.players[e.owner]
    bag = p.resources
    attr = _RES_ATTR[kind]
    held = getattr(bag, attr)
    setattr(bag, attr, min(state.config.resource_cap, held + taken))
    setattr(p, _HARVESTED_ATTR[kind], getattr(p, _HARVESTED_ATTR[kind]) + taken)
    p.score += taken
    m.deplete(i, taken)

    if m.res_amount[i] <= 0:
        _after_harvest_exhausted(state, e)
    else:
        e.start_timer(state.config.cycle_ticks())
    return state


def _after_harvest_exhausted(state: GameState, e: Entity) -> None:
    if state.config.harvest_forever:
        nxt = _nearest_deposit(state, e.x, e.y)
        if nxt is not None and _order_walk_to_tile(state, e, nxt):
            return
    _finish_walk(state, e)


def _nearest_deposit(state: GameState, x: int, y: int) -> int | None:
    m = state.map
    best = None
    best_key = None
    w = m.width
    for i, amt in enumerate(m.res_amount):
        if amt > 0:
            tx, ty = i % w, i // w
            key = (chebyshev(x, y, tx, ty), ty, tx)
            if best_key is None or key < best_key:
                best, best_key = i, key
    return best


def _order_walk_to_tile(state: GameState, e: Entity, tile_i: int) -> bool:
    """Send ``e`` toward a resource tile; True if a route was found."""
    m = state.map
    tx, ty = tile_i % m.width, tile_i // m.width
    e.target_tile = tile_i
    e.target_id = -1
    if chebyshev(e.x, e.y, tx, ty) <= 1:
        e.state = _HARVESTING
        e.path = None
        e.path_i = 0
        e.goal = None
        e.start_timer(state.config.cycle_ticks())
        state.activate(e)
        return True
    goal = _best_adjacent_goal(state, e, tx, ty)
    if goal is None:
        return False
    return _start_walk(state, e, goal)


def _best_adjacent_goal(state: GameState, e: Entity, tx: int, ty: int):
    m = state.map
    options = [(tx + dx, ty + dy) for dx, dy in DIRS8 if m.walkable(tx + dx, ty + dy)]
    if not options:
        return None
    options.sort(key=lambda t: (chebyshev(e.x, e.y, t[0], t[1]), t[1], t[0]))
    return options[0]


def _start_walk(state: GameState, e: Entity, goal: tuple[int, int]) -> bool:
    m = state.map
    e.goal = goal
    if state.config.pathfinding_enabled:
        path = _jps8(m.walkable, (e.x, e.y), goal)
        if path is None:
            e.goal = None
            return False
        e.path = path
        e.path_i = 0
    else:
        e.path = None
        e.path_i = 0
    e.state = _WALKING
    e.start_timer(state.config.move_ticks(e.archetype.speed_cost))
    state.activate(e)
    return True


def _resolve_combat(state: GameState, fired: list[Entity]) -> None:
    """Resolve every combat swing due this tick simultaneously.

    All swings are collected against start-of-tick positions before any
    damage or movement applies, so perfectly synced duels trade blows (and
    may end in a mutual kill) instead of the lower entity id always
    striking first.  Deaths and credits then resolve in ascending id order.
    """
    swings: list[tuple[Entity, Entity]] = []
    engaged: dict[int, Entity] = {}  # victim id -> lowest-id attacker
    for e in fired:
        if e.state != _COMBAT:
            continue
        target = state.entities.get(e.target_id)
        if target is None or target.state == _DEAD:
            _finish_walk(state, e)
            continue
        if chebyshev(e.x, e.y, target.x, target.y) > 1:
            _chase(state, e, target)
            continue
        swings.append((e, target))
        engaged.setdefault(target.id, e)

    if not swings:
        return
    for e, target in swings:
        target.hp -= e.archetype.attack_damage
    victims = sorted({t.id: t for _, t in swings}.values(), key=lambda t: t.id)
    for target in victims:
        if target.hp <= 0 and target.state != _DEAD:
            _kill(state, target, credit=engaged[target.id].owner)
    for e, target in swings:
        if e.state == _DEAD:
            continue
        if target.state == _DEAD:
            _finish_walk(state, e)
            continue
        if (state.config.auto_attack and target.archetype.attack_damage > 0
                and target.archetype.is_unit
                and target.state in (_IDLE, _WALKING, _HARVESTING, _BUILDING)):
            target.clear_task()
            target.state = _COMBAT
            target.target_id = e.id
            target.start_timer(state.config.cycle_ticks())
            state.activate(target)
        e.start_timer(state.config.cycle_ticks())


def _chase(state: GameState, e: Entity, target: Entity) -> None:
    """Close the distance to a combat target (or give up when boxed out)."""
    goal = _best_adjacent_goal(state, e, target.x, target.y)
    if goal is not None and _start_walk(state, e, goal):
        return
    if state.config.pathfinding_enabled:
        _finish_walk(state, e)
    else:
        # greedy pursuit toward the target's own tile
        e.goal = (target.x, target.y)
        e.path = None
        e.path_i = 0
        e.state = _WALKING
        e.start_timer(state.config.move_ticks(e.archetype.speed_cost))
        state.activate(e)


def attack_cycle(state: GameState, attacker_id: int) -> GameState:
    """One swing: damage if in range, chase if not, disengage if target gone.

    The tick loop batches all due swings through the simultaneous resolver;
    this single-entity form backs direct invocations and shares its
    bookkeeping with that path.
    """
    e = state.entity(attacker_id)
    target = state.entities.get(e.target_id)
    if target is None or target.state == _DEAD:
        _finish_walk(state, e)
        return state
    if chebyshev(e.x, e.y, target.x, target.y) > 1:
        _chase(state, e, target)
        return state

    target.hp -= e.archetype.attack_damage
    if target.hp <= 0:
        _kill(state, target, credit=e.owner)
        _finish_walk(state, e)
        return state

    if (state.config.auto_attack and target.archetype.attack_damage > 0
            and target.archetype.is_unit
            and target.state in (_IDLE, _WALKING, _HARVESTING, _BUILDING)):
        target.clear_task()
        target.state = _COMBAT
        target.target_id = e.id
        target.start_timer(state.config.cycle_ticks())
        state.activate(target)

    e.start_timer(state.config.cycle_ticks())
    return state


def _kill(state: GameState, victim: Entity, credit: int | None) -> None:
    was_built = victim.state != _SPAWNING
    victim.state = _DEAD
    victim.clear_timer()
    m = state.map
    i = victim.y * m.width + victim.x
    if m.occupant[i] == victim.id:
        m.occupant[i] = -1
    if not victim.archetype.is_unit:
        m.blocked[i] = m.terrain[i] != GRASS or m.res_amount[i] > 0

    p = state.players[victim.owner]
    p.entity_count -= 1
    if victim.archetype.is_unit:
        p.resources.unit_count -= 1
        p.resources.food_used -= victim.archetype.food_cost
    elif was_built and victim.archetype.food_provided:
        p.resources.food_cap = max(0, p.resources.food_cap - victim.archetype.food_provided)

    if credit is not None:
        state.players[credit].score += victim.archetype.max_hp

    del state.entities[victim.id]
    state.mark_active_dirty()
    state._victory_dirty = True

    if p.selected_entity == victim.id:
        owned = [eid for eid, e in state.entities.items() if e.owner == victim.owner]
        p.selected_entity = min(owned) if owned else None
    if p.entity_count == 0:
        p.alive = False


def _complete_spawn(state: GameState, e: Entity) -> None:
    e.state = _IDLE
    e.clear_timer()
    state.mark_active_dirty()
    _apply_completion_effects(state, e)
    if state.config.engage_on_sight:
        _engage_adjacent(state, e)
    builder = state.entities.get(e.target_id)
    e.target_id = -1
    if builder is not None and builder.state == _BUILDING and builder.target_id == e.id:
        builder.state = _IDLE
        builder.clear_task()


# ---------------------------------------------------------------------------
# State machine evaluation (pure; mirrors what the tick loop does)
# ---------------------------------------------------------------------------

def evaluate_state_machine(state: GameState, eid: int) -> EntityState:
    """Successor state for one entity given timers, targets, and the map."""
    e = state.entity(eid)
    s = e.state
    if s == _DEAD:
        raise ValueError(f"entity {eid} is dead")
    if s == _SPAWNING:
        return _IDLE if e.timer_remaining == 0 else _SPAWNING
    if s == _WALKING:
        if e.target_tile >= 0:
            m = state.map
            tx, ty = e.target_tile % m.width, e.target_tile // m.width
            if chebyshev(e.x, e.y, tx, ty) <= 1:
                return _HARVESTING if m.res_amount[e.target_tile] > 0 else _IDLE
            return _WALKING
        if e.target_id >= 0:
            target = state.entities.get(e.target_id)
            if target is None:
                return _IDLE
            return _COMBAT if chebyshev(e.x, e.y, target.x, target.y) <= 1 else _WALKING
        exhausted = (e.path is None or e.path_i >= len(e.path)) and \
                    (e.goal is None or (e.x, e.y) == e.goal)
        return _IDLE if exhausted else _WALKING
    if s == _HARVESTING:
        if e.target_tile >= 0 and state.map.res_amount[e.target_tile] > 0:
            return _HARVESTING
        if state.config.harvest_forever and _nearest_deposit(state, e.x, e.y) is not None:
            return _WALKING
        return _IDLE
    if s == _COMBAT:
        target = state.entities.get(e.target_id)
        if target is None or target.state == _DEAD:
            return _IDLE
        return _COMBAT if chebyshev(e.x, e.y, target.x, target.y) <= 1 else _WALKING
    if s == _BUILDING:
        under_construction = state.entities.get(e.target_id)
        if under_construction is None or under_construction.state != _SPAWNING:
            return _IDLE
        return _BUILDING
    return _IDLE


# ---------------------------------------------------------------------------
# Primitive action application
# ---------------------------------------------------------------------------

def apply_primitive_action(state: GameState, player: int, action: PrimitiveAction) -> bool:
    """Route an action to the player's selected entity.

    Returns True if the action took effect, False for the ignored no-op
    (illegal move, unaffordable build, ...).  Never raises for in-range
    players: RL agents must not be able to crash the engine.
    """
    if not 0 <= player < len(state.players):
        raise IndexError(f"player {player} out of range")
    action = PrimitiveAction(action)
    p = state.players[player]
    if state.terminal is not None or not p.alive:
        return action == PrimitiveAction.NO_ACTION

    if action == PrimitiveAction.NO_ACTION:
        return True
    if action == PrimitiveAction.NEXT_UNIT or action == PrimitiveAction.PREV_UNIT:
        return _cycle_selection(state, p, forward=action == PrimitiveAction.NEXT_UNIT)

    e = state.entities.get(p.selected_entity) if p.selected_entity is not None else None
    if e is None or e.state == _SPAWNING:
        return False

    if action in MOVE_DIRS:
        if not e.archetype.is_unit:
            return False
        dx, dy = MOVE_DIRS[action]
        nx, ny = e.x + dx, e.y + dy
        if not state.map.free(nx, ny):
            return False
        e.clear_task()
        e.state = _WALKING
        e.path = [(nx, ny)]
        e.path_i = 0
        e.goal = (nx, ny)
        e.start_timer(state.config.move_ticks(e.archetype.speed_cost))
        state.activate(e)
        return True

    if action == PrimitiveAction.ATTACK:
        if not e.archetype.is_unit or e.archetype.attack_damage <= 0:
            return False
        target = _nearest_adjacent_enemy(state, e)
        if target is None:
            return False
        e.clear_task()
        e.state = _COMBAT
        e.target_id = target
        e.start_timer(state.config.cycle_ticks())
        state.activate(e)
        return True

    if action == PrimitiveAction.HARVEST:
        if not can_harvest(e.archetype):
            return False
        tile = _nearest_adjacent_resource(state, e)
        if tile is None:
            return False
        e.clear_task()
        e.state = _HARVESTING
        e.target_tile = tile
        e.start_timer(state.config.cycle_ticks())
        state.activate(e)
        return True

    if action in BUILD_ACTIONS:
        slot = int(action) - int(PrimitiveAction.BUILD_0)
        if slot >= len(e.archetype.builds):
            return False
        product = state.roster[e.archetype.builds[slot]]
        if product.is_unit:
            return _train(state, p, e, product)
        return _construct(state, p, e, product)
    return False


def _cycle_selection(state: GameState, p: Player, forward: bool) -> bool:
    owned = sorted(eid for eid, e in state.entities.items() if e.owner == p.index)
    if not owned:
        return False
    if p.selected_entity not in owned:
        p.selected_entity = owned[0]
        return True
    i = owned.index(p.selected_entity)
    nxt = owned[(i + 1) % len(owned)] if forward else owned[(i - 1) % len(owned)]
    if nxt == p.selected_entity:
        return False
    p.selected_entity = nxt
    return True


def _nearest_adjacent_enemy(state: GameState, e: Entity) -> int | None:
    m = state.map
    best = None
    for dx, dy in DIRS8:
        nx, ny = e.x + dx, e.y + dy
        if not m.in_bounds(nx, ny):
            continue
        occ = m.occupant[ny * m.width + nx]
        if occ >= 0:
            other = state.entities.get(occ)
            if other is not None and other.owner != e.owner and (best is None or occ < best):
                best = occ
    return best


def _nearest_adjacent_resource(state: GameState, e: Entity) -> int | None:
    m = state.map
    for dx, dy in DIRS8:
        nx, ny = e.x + dx, e.y + dy
        if m.in_bounds(nx, ny) and m.res_amount[ny * m.width + nx] > 0:
            return ny * m.width + nx
    return None


def _train(state: GameState, p: Player, trainer: Entity, product: Archetype) -> bool:
    bag = p.resources
    if bag.gold < product.gold_cost or bag.lumber < product.lumber_cost:
        return False
    if bag.unit_count >= state.config.unit_limit:
        return False
    if bag.food_used + product.food_cost > bag.food_cap:
        return False
    spot = _free_neighbor_tile(state.map, trainer.x, trainer.y)
    if spot is None:
        return False
    bag.gold -= product.gold_cost
    bag.lumber -= product.lumber_cost
    _spawn_entity(state, p.index, product, spot[0], spot[1],
                  construction_ticks=state.config.build_ticks("unit"))
    return True


def _construct(state: GameState, p: Player, builder: Entity, product: Archetype) -> bool:
    if not builder.archetype.is_unit:
        return False
    bag = p.resources
    if bag.gold < product.gold_cost or bag.lumber < product.lumber_cost:
        return False
    spot = _free_neighbor_tile(state.map, builder.x, builder.y)
    if spot is None:
        return False
    bag.gold -= product.gold_cost
    bag.lumber -= product.lumber_cost
    building = _spawn_entity(state, p.index, product, spot[0], spot[1],
                             construction_ticks=state.config.build_ticks("building"))
    p.score += state.roster.build_score(product)
    builder.clear_task()
    builder.state = _BUILDING
    builder.target_id = building.id
    building.target_id = builder.id
    return True


def state_hash(state: GameState) -> int:
    return state.state_hash()
