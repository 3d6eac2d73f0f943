"""The two-layer action space.

Layer one is 16 primitive actions with a dense, wire-stable encoding;
layer two is 6 compound actions that expand into primitive sequences
(selection switches included).  Expansion is computed once at issue time
(open loop); re-planning is the agents' job.
"""
from __future__ import annotations

from enum import IntEnum

from .entity import EntityState
from .pathfinding import PathQuery, find_path_jps
from .tilemap import DIRS8, chebyshev


class PrimitiveAction(IntEnum):
    MOVE_UP = 0
    MOVE_DOWN = 1
    MOVE_LEFT = 2
    MOVE_RIGHT = 3
    MOVE_UP_LEFT = 4
    MOVE_UP_RIGHT = 5
    MOVE_DOWN_LEFT = 6
    MOVE_DOWN_RIGHT = 7
    ATTACK = 8
    HARVEST = 9
    BUILD_0 = 10
    BUILD_1 = 11
    BUILD_2 = 12
    NEXT_UNIT = 13
    PREV_UNIT = 14
    NO_ACTION = 15


class CompoundAction(IntEnum):
    HARVEST_NEAREST_RESOURCE = 0
    ATTACK_NEAREST_ENEMY = 1
    BUILD_TOWN_HALL = 2
    BUILD_BARRACKS = 3
    TRAIN_OR_BUILD_ARMY = 4
    EXPAND_TOWARD_OPPONENT = 5


# Move action <-> direction, index-aligned with the enum and DIRS8.
MOVE_ACTIONS = tuple(PrimitiveAction(i) for i in range(8))
MOVE_DIRS = {PrimitiveAction(i): DIRS8[i] for i in range(8)}
DIR_TO_MOVE = {d: a for a, d in MOVE_DIRS.items()}

BUILD_ACTIONS = (PrimitiveAction.BUILD_0, PrimitiveAction.BUILD_1, PrimitiveAction.BUILD_2)


def can_harvest(archetype) -> bool:
    # builder units double as harvesters (the Worker, in the bundled roster)
    return archetype.is_unit and len(archetype.builds) > 0


def legal_actions(state, player: int) -> set[PrimitiveAction]:
    """Primitive actions that would not resolve to a no-op right now.

    NO_ACTION is always included; a dead player gets nothing else.
    """
    legal = {PrimitiveAction.NO_ACTION}
    if not 0 <= player < len(state.players):
        raise IndexError(f"player {player} out of range")
    p = state.players[player]
    if not p.alive or state.terminal is not None:
        return legal

    owned_n = sum(1 for e in state.entities.values() if e.owner == player)
    if owned_n > 1:
        legal.add(PrimitiveAction.NEXT_UNIT)
        legal.add(PrimitiveAction.PREV_UNIT)

    e = state.entities.get(p.selected_entity) if p.selected_entity is not None else None
    if e is None or e.state == EntityState.SPAWNING:
        return legal

    m = state.map
    arche = e.archetype
    if arche.is_unit:
        for action, (dx, dy) in MOVE_DIRS.items():
            if m.free(e.x + dx, e.y + dy):
                legal.add(action)
        if arche.attack_damage > 0 and _adjacent_enemy(state, e) is not None:
            legal.add(PrimitiveAction.ATTACK)
        if can_harvest(arche) and _adjacent_resource(state, e) is not None:
            legal.add(PrimitiveAction.HARVEST)

    for slot, action in enumerate(BUILD_ACTIONS):
        if slot >= len(arche.builds):
            continue
        target = state.roster[arche.builds[slot]]
        if _can_produce(state, player, e, target):
            legal.add(action)
    return legal


def _can_produce(state, player: int, producer, target) -> bool:
    bag = state.players[player].resources
    if bag.gold < target.gold_cost or bag.lumber < target.lumber_cost:
        return False
    if target.is_unit:
        if bag.unit_count >= state.config.unit_limit:
            return False
        if bag.food_used + target.food_cost > bag.food_cap:
            return False
    return _free_neighbor(state.map, producer.x, producer.y) is not None


def _free_neighbor(m, x: int, y: int) -> tuple[int, int] | None:
    for dx, dy in DIRS8:
        if m.free(x + dx, y + dy):
            return (x + dx, y + dy)
    return None


def _adjacent_enemy(state, e) -> int | None:
    best = None
    m = state.map
    for dx, dy in DIRS8:
        nx, ny = e.x + dx, e.y + dy
        if not m.in_bounds(nx, ny):
            continue
        occ = m.occupant[ny * m.width + nx]
        if occ >= 0:
            other = state.entities.get(occ)
            if other is not None and other.owner != e.owner:
                if best is None or occ < best:
                    best = occ
    return best


def _adjacent_resource(state, e) -> int | None:
    m = state.map
    for dx, dy in DIRS8:
        nx, ny = e.x + dx, e.y + dy
        if m.in_bounds(nx, ny) and m.res_amount[ny * m.width + nx] > 0:
            return ny * m.width + nx
    return None


# ---------------------------------------------------------------------------
# Compound expansion
# ---------------------------------------------------------------------------

def expand_compound(state, player: int, action: CompoundAction) -> list[PrimitiveAction]:
    """Expand a compound action into a primitive sequence for this player.

    Empty list means no applicable entity or nothing to do.  Applicability
    prefers the currently selected entity, then idle candidates by id.
    """
    if not 0 <= player < len(state.players):
        raise IndexError(f"player {player} out of range")
    if not state.players[player].alive:
        return []
    action = CompoundAction(action)
    if action == CompoundAction.HARVEST_NEAREST_RESOURCE:
        return _expand_harvest(state, player)
    if action == CompoundAction.ATTACK_NEAREST_ENEMY:
        return _expand_attack(state, player)
    if action == CompoundAction.BUILD_TOWN_HALL:
        return _expand_build(state, player, "TownHall", unique=True)
    if action == CompoundAction.BUILD_BARRACKS:
        return _expand_build(state, player, "Barracks", unique=False)
    if action == CompoundAction.TRAIN_OR_BUILD_ARMY:
        return _expand_army(state, player)
    return _expand_toward_opponent(state, player)


def _pick(state, player: int, pred):
    """Applicable entity: selected if it qualifies, else idle by id, else any."""
    candidates = [e for e in state.entities.values()
                  if e.owner == player and e.state != EntityState.SPAWNING and pred(e)]
    if not candidates:
        return None
    sel = state.players[player].selected_entity
    for e in candidates:
        if e.id == sel and e.state == EntityState.IDLE:
            return e
    idle = [e for e in candidates if e.state == EntityState.IDLE]
    if idle:
        return min(idle, key=lambda e: e.id)
    for e in candidates:
        if e.id == sel:
            return e
    return min(candidates, key=lambda e: e.id)


def _selection_steps(state, player: int, eid: int) -> list[PrimitiveAction]:
    """NEXT_UNIT presses that rotate the selection onto entity ``eid``."""
    owned = sorted(e.id for e in state.entities.values() if e.owner == player)
    current = state.players[player].selected_entity
    if current == eid:
        return []
    if current not in owned:
        current = owned[0]
        if current == eid:
            return []
    presses = (owned.index(eid) - owned.index(current)) % len(owned)
    return [PrimitiveAction.NEXT_UNIT] * presses


def _path_moves(state, start, goal_tiles) -> list[PrimitiveAction] | None:
    """Per-step move actions from start to the best reachable goal tile."""
    m = state.map
    sx, sy = start
    best = None
    for gx, gy in sorted(goal_tiles, key=lambda t: (chebyshev(sx, sy, t[0], t[1]), t[1], t[0])):
        if (gx, gy) == (sx, sy):
            return []
        if not m.walkable(gx, gy):
            continue
        path = find_path_jps(PathQuery(m.walkable, m.width, m.height, start, (gx, gy)))
        if path is not None:
            best = path
            break
    if best is None:
        return None
    moves = []
    px, py = start
    for x, y in best:
        moves.append(DIR_TO_MOVE[(x - px, y - py)])
        px, py = x, y
    return moves


def _adjacent_tiles(m, x: int, y: int) -> list[tuple[int, int]]:
    return [(x + dx, y + dy) for dx, dy in DIRS8 if m.in_bounds(x + dx, y + dy)]


def _expand_harvest(state, player: int) -> list[PrimitiveAction]:
    worker = _pick(state, player, lambda e: can_harvest(e.archetype))
    deposits = state.map.resource_tiles()
    if worker is None or not deposits:
        return []
    sel = _selection_steps(state, player, worker.id)
    nearest = min(deposits, key=lambda t: (chebyshev(worker.x, worker.y, t[0], t[1]), t[1], t[0]))
    if chebyshev(worker.x, worker.y, nearest[0], nearest[1]) <= 1:
        return sel + [PrimitiveAction.HARVEST]
    moves = _path_moves(state, (worker.x, worker.y),
                        _adjacent_tiles(state.map, nearest[0], nearest[1]))
    if moves is None:
        return []
    return sel + moves + [PrimitiveAction.HARVEST]


def _expand_attack(state, player: int) -> list[PrimitiveAction]:
    fighter = _pick(state, player,
                    lambda e: e.archetype.is_unit and e.archetype.attack_damage > 0)
    enemies = [e for e in state.entities.values() if e.owner != player]
    if fighter is None or not enemies:
        return []
    target = min(enemies, key=lambda e: (chebyshev(fighter.x, fighter.y, e.x, e.y), e.id))
    sel = _selection_steps(state, player, fighter.id)
    if chebyshev(fighter.x, fighter.y, target.x, target.y) <= 1:
        return sel + [PrimitiveAction.ATTACK]
    moves = _path_moves(state, (fighter.x, fighter.y),
                        _adjacent_tiles(state.map, target.x, target.y))
    if moves is None:
        return []
    return sel + moves + [PrimitiveAction.ATTACK]


def _build_slot(builder_arche, name: str) -> PrimitiveAction | None:
    try:
        return BUILD_ACTIONS[builder_arche.builds.index(name)]
    except ValueError:
        return None


def _expand_build(state, player: int, name: str, unique: bool) -> list[PrimitiveAction]:
    if unique and any(e.owner == player and e.archetype.name == name
                      for e in state.entities.values()):
        return []
    worker = _pick(state, player,
                   lambda e: e.archetype.is_unit and _build_slot(e.archetype, name) is not None)
    if worker is None or _free_neighbor(state.map, worker.x, worker.y) is None:
        return []
    return _selection_steps(state, player, worker.id) + [_build_slot(worker.archetype, name)]


def _expand_army(state, player: int) -> list[PrimitiveAction]:
    """Train from an existing army building, else have a worker put one up."""
    barracks = _pick(state, player, lambda e: e.archetype.name == "Barracks")
    if barracks is not None:
        return _selection_steps(state, player, barracks.id) + [PrimitiveAction.BUILD_0]
    return _expand_build(state, player, "Barracks", unique=False)


def _expand_toward_opponent(state, player: int) -> list[PrimitiveAction]:
    """Walk a worker a few tiles toward the nearest opponent and drop a Farm."""
    worker = _pick(state, player, lambda e: e.archetype.name == "Worker")
    if worker is None:
        return []
    enemies = [e for e in state.entities.values() if e.owner != player]
    if enemies:
        anchor = min(enemies, key=lambda e: (chebyshev(worker.x, worker.y, e.x, e.y), e.id))
        goal = (anchor.x, anchor.y)
    else:
        others = [s for i, s in enumerate(state.map.spawns) if i != player]
        if not others:
            return []
        goal = min(others, key=lambda t: chebyshev(worker.x, worker.y, t[0], t[1]))
    sel = _selection_steps(state, player, worker.id)
    moves = _path_moves(state, (worker.x, worker.y),
                        _adjacent_tiles(state.map, goal[0], goal[1]))
    moves = (moves or [])[:3]  # advance a few tiles per issue, then build
    slot = _build_slot(worker.archetype, "Farm")
    if slot is None:
        return sel + moves
    return sel + moves + [slot]
