import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridrts.actions import PrimitiveAction as PA
from gridrts.config import GameConfig
from gridrts.engine import (ScenarioError, TerminalTickWarning, apply_primitive_action,
                            attack_cycle, evaluate_state_machine, harvest_cycle,
                            is_terminal, new_game, tick)
from gridrts.entity import EntityState
from gridrts.scenarios import load_scenario
from gridrts.tilemap import RES_GOLD, TileMap

from conftest import map_from_rows


def duel_state(config=None, rows=None, amounts=None):
    tm = map_from_rows(rows or [
        ".......",
        ".0..1..",
        ".......",
        ".G.....",
        ".......",
    ], amounts=amounts or {"G": 100})
    return new_game(config or GameConfig(), tm, seed=0)


def run_ticks(state, n):
    for _ in range(n):
        tick(state)
    return state


# ---------------------------------------------------------------------------
# new_game
# ---------------------------------------------------------------------------

def test_new_game_one_worker_per_player():
    spec = load_scenario("10x10-2-FFA")
    state = new_game(GameConfig(), spec, seed=1)
    assert len(state.players) == 2
    assert state.tick == 0
    for p in (0, 1):
        owned = [e for e in state.entities.values() if e.owner == p]
        assert len(owned) == 1
        assert owned[0].archetype.name == "Worker"
        assert owned[0].state == EntityState.IDLE


def test_new_game_instant_town_hall():
    spec = load_scenario("15x15-2-FFA")
    state = new_game(GameConfig(instant_town_hall=True), spec, seed=7)
    for p in (0, 1):
        names = sorted(e.archetype.name for e in state.entities.values() if e.owner == p)
        assert names == ["TownHall", "Worker"]
        hall = next(e for e in state.entities.values()
                    if e.owner == p and e.archetype.name == "TownHall")
        worker = next(e for e in state.entities.values()
                      if e.owner == p and e.archetype.name == "Worker")
        assert max(abs(hall.x - worker.x), abs(hall.y - worker.y)) == 1
        assert state.players[p].resources.food_cap == 5


def test_new_game_deterministic_construction():
    spec = load_scenario("10x10-2-FFA")
    a = new_game(GameConfig(), spec, seed=3)
    b = new_game(GameConfig(), spec, seed=3)
    assert a.state_hash() == b.state_hash()


def test_new_game_rejects_bad_scenarios():
    tm = TileMap(4, 4)
    tm.spawns = [(1, 1)]
    with pytest.raises(ScenarioError, match="1 spawns for 2"):
        from gridrts.scenarios import ScenarioSpec
        spec = ScenarioSpec(name="bad", map_path="<m>", players=2,
                            objective="last_man_standing")
        spec._template = tm
        new_game(GameConfig(), spec, seed=0)

    tm2 = TileMap(3, 3)
    tm2.terrain[0] = 1  # water under the spawn point
    tm2.blocked[0] = True
    tm2.spawns = [(0, 0)]
    with pytest.raises(ScenarioError, match=r"\(0,0\)"):
        new_game(GameConfig(), tm2, seed=0)


def test_new_game_start_resources():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250))
    for p in state.players:
        assert (p.resources.gold, p.resources.lumber) == (500, 250)


# ---------------------------------------------------------------------------
# tick + movement timing
# ---------------------------------------------------------------------------

def test_walk_fires_exactly_on_tenth_tick():
    state = duel_state()
    worker = state.entities[1]
    assert apply_primitive_action(state, 0, PA.MOVE_RIGHT)
    assert worker.state == EntityState.WALKING
    assert worker.timer.total == 10
    run_ticks(state, 9)
    assert worker.pos == (1, 1)
    tick(state)
    assert worker.pos == (2, 1)
    assert worker.state == EntityState.IDLE


def test_instant_walking_moves_next_tick():
    state = duel_state(GameConfig(instant_walking=True))
    worker = state.entities[1]
    apply_primitive_action(state, 0, PA.MOVE_RIGHT)
    tick(state)
    assert worker.pos == (2, 1)


def test_idle_entities_only_tick_counter_changes():
    state = duel_state()
    before = {eid: (e.x, e.y, e.hp, e.state) for eid, e in state.entities.items()}
    gold_before = [p.resources.gold for p in state.players]
    tick(state)
    assert state.tick == 1
    assert before == {eid: (e.x, e.y, e.hp, e.state) for eid, e in state.entities.items()}
    assert gold_before == [p.resources.gold for p in state.players]


def test_tick_on_terminal_state_warns_and_is_noop():
    state = duel_state(GameConfig(tick_limit=5))
    run_ticks(state, 5)
    assert state.terminal is not None
    digest = state.state_hash()
    with pytest.warns(TerminalTickWarning):
        tick(state)
    assert state.state_hash() == digest


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=120))
def test_uninterrupted_walk_step_count(total_ticks):
    """A walking unit completes exactly floor(T / cost) steps in T ticks."""
    rows = ["0" + "." * 14]
    tm = map_from_rows(rows)
    state = new_game(GameConfig(), tm, seed=0)
    worker = state.entities[1]
    from gridrts.engine import _start_walk

    assert _start_walk(state, worker, (12, 0))
    run_ticks(state, total_ticks)
    assert worker.x == min(12, total_ticks // 10)


# ---------------------------------------------------------------------------
# apply_primitive_action
# ---------------------------------------------------------------------------

def test_greedy_stepping_when_pathfinding_disabled():
    """Without pathfinding the engine walks greedy single steps to targets."""
    state = duel_state(GameConfig(pathfinding_enabled=False), rows=[
        ".......",
        ".0.....",
        ".......",
        "....G..",
        "......1",
    ])
    worker = state.entities[1]
    from gridrts.engine import _order_walk_to_tile

    gold_tile = state.map.index(4, 3)
    assert _order_walk_to_tile(state, worker, gold_tile)
    assert worker.path is None  # no planned path, pure greedy pursuit
    # two diagonal greedy steps reach an adjacent tile; cycles every 10 ticks
    run_ticks(state, 20)
    assert worker.state == EntityState.HARVESTING
    assert state.players[0].resources.gold == 0
    run_ticks(state, 30)
    assert state.players[0].resources.gold == 30


def test_noaction_changes_nothing():
    state = duel_state()
    digest = state.state_hash()
    assert apply_primitive_action(state, 0, PA.NO_ACTION)
    assert state.state_hash() == digest


def test_move_into_blocked_tile_is_ignored():
    state = duel_state(rows=["#..", "#0.", "#.."])
    assert not apply_primitive_action(state, 0, PA.MOVE_LEFT)
    assert state.entities[1].state == EntityState.IDLE


def test_build_without_gold_is_ignored():
    state = duel_state()  # start resources default to zero
    assert not apply_primitive_action(state, 0, PA.BUILD_0)
    assert len(state.entities) == 2


def test_player_index_out_of_range_raises():
    state = duel_state()
    with pytest.raises(IndexError):
        apply_primitive_action(state, 9, PA.NO_ACTION)


def test_selection_cycling():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250))
    p = state.players[0]
    assert apply_primitive_action(state, 0, PA.BUILD_0)  # town hall appears
    first = p.selected_entity
    assert apply_primitive_action(state, 0, PA.NEXT_UNIT)
    assert p.selected_entity != first
    assert apply_primitive_action(state, 0, PA.PREV_UNIT)
    assert p.selected_entity == first


# ---------------------------------------------------------------------------
# harvesting
# ---------------------------------------------------------------------------

def harvesting_worker(amount=100, cap=10**6, forever=False):
    cfg = GameConfig(resource_cap=cap, harvest_forever=forever)
    state = duel_state(cfg, rows=[
        ".......",
        ".0..1..",
        ".G.....",
        "......G",
    ], amounts={"G": amount})
    worker = state.entities[1]
    assert apply_primitive_action(state, 0, PA.HARVEST)
    assert worker.state == EntityState.HARVESTING
    return state, worker


def test_harvest_cycle_moves_yield_to_player():
    state, worker = harvesting_worker(amount=100)
    run_ticks(state, 10)
    p = state.players[0]
    assert p.resources.gold == 10
    assert p.score == 10
    assert state.map.res_amount[worker.target_tile] == 90


def test_harvest_clamps_to_remaining_amount():
    state, worker = harvesting_worker(amount=4)
    tile = worker.target_tile
    run_ticks(state, 10)
    assert state.players[0].resources.gold == 4
    assert state.map.res_amount[tile] == 0
    assert worker.state != EntityState.HARVESTING


def test_harvest_at_resource_cap_still_depletes_tile():
    state, worker = harvesting_worker(amount=4, cap=10**6)
    state.players[0].resources.gold = 10**6
    tile = worker.target_tile
    run_ticks(state, 10)
    assert state.players[0].resources.gold == 10**6
    assert state.map.res_amount[tile] == 0


def test_harvest_forever_retargets_nearest_deposit():
    state, worker = harvesting_worker(amount=10, forever=True)
    run_ticks(state, 10)  # one cycle exhausts the near deposit
    assert worker.state == EntityState.WALKING
    tx = worker.target_tile % state.map.width
    ty = worker.target_tile // state.map.width
    assert (tx, ty) == (6, 3)


def test_harvest_conservation():
    state, worker = harvesting_worker(amount=100)
    tile = worker.target_tile
    run_ticks(state, 400)
    p = state.players[0]
    assert p.resources.gold == 100 - state.map.res_amount[tile] == 100


# ---------------------------------------------------------------------------
# combat
# ---------------------------------------------------------------------------

def combat_pair():
    """A Footman owned by player 0 adjacent to player 1's Worker."""
    tm = map_from_rows([
        ".....",
        ".0.1.",
        ".....",
    ])
    state = new_game(GameConfig(), tm, seed=0)
    from gridrts.engine import _spawn_entity

    footman = _spawn_entity(state, 0, state.roster["Footman"], 2, 2, None)
    state.players[0].selected_entity = footman.id
    return state, footman


def test_footman_kills_worker_in_exactly_three_cycles():
    state, footman = combat_pair()
    victim = state.entities[2]
    assert victim.archetype.max_hp == 30 and footman.archetype.attack_damage == 10
    assert apply_primitive_action(state, 0, PA.ATTACK)
    run_ticks(state, 29)
    assert victim.hp == 10
    tick(state)  # 30th tick: third swing
    assert victim.id not in state.entities
    assert state.terminal is not None and state.terminal.winner == 0


def test_kill_score_is_victim_max_hp():
    state, footman = combat_pair()
    apply_primitive_action(state, 0, PA.ATTACK)
    run_ticks(state, 30)
    assert state.players[0].score == 30


def test_attack_out_of_range_repaths():
    state, footman = combat_pair()
    apply_primitive_action(state, 0, PA.ATTACK)
    victim = state.entities[2]
    # teleport the victim away before the first swing
    m = state.map
    m.occupant[victim.y * m.width + victim.x] = -1
    victim.x, victim.y = 4, 0
    m.occupant[0 * m.width + 4] = victim.id
    run_ticks(state, 10)
    assert victim.hp == victim.archetype.max_hp
    assert footman.state == EntityState.WALKING
    while state.terminal is None:
        tick(state)
    assert victim.id not in state.entities  # chased down and killed


def test_attack_reducing_hp_exactly_to_zero_kills():
    state, footman = combat_pair()
    victim = state.entities[2]
    victim.hp = 10
    apply_primitive_action(state, 0, PA.ATTACK)
    run_ticks(state, 10)
    assert victim.id not in state.entities


def test_auto_attack_retaliation():
    state, footman = combat_pair()
    state.config = GameConfig(auto_attack=True)
    victim = state.entities[2]
    apply_primitive_action(state, 0, PA.ATTACK)
    run_ticks(state, 10)
    assert victim.state == EntityState.COMBAT
    assert victim.target_id == footman.id
    run_ticks(state, 10)
    assert footman.hp == footman.archetype.max_hp - victim.archetype.attack_damage


# ---------------------------------------------------------------------------
# building / training
# ---------------------------------------------------------------------------

def test_building_takes_exactly_300_ticks():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250))
    assert apply_primitive_action(state, 0, PA.BUILD_0)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    worker = state.entities[1]
    assert hall.state == EntityState.SPAWNING and hall.timer.total == 300
    assert worker.state == EntityState.BUILDING
    assert state.players[0].resources.gold == 0
    run_ticks(state, 299)
    assert hall.state == EntityState.SPAWNING
    tick(state)
    assert hall.state == EntityState.IDLE
    assert worker.state == EntityState.IDLE
    assert state.players[0].resources.food_cap == 5


def test_instant_building_completes_next_tick():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250,
                                  instant_building=True))
    apply_primitive_action(state, 0, PA.BUILD_0)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    tick(state)
    assert hall.state == EntityState.IDLE


def test_build_score_awarded_at_start():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250))
    apply_primitive_action(state, 0, PA.BUILD_0)
    assert state.players[0].score == 50  # 500 gold / 10


def test_training_respects_unit_limit():
    state = duel_state(GameConfig(start_gold=5000, start_lumber=2500, unit_limit=1,
                                  instant_building=True))
    apply_primitive_action(state, 0, PA.BUILD_0)
    tick(state)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    state.players[0].selected_entity = hall.id
    assert not apply_primitive_action(state, 0, PA.BUILD_0)  # at unit_limit


def test_training_requires_food():
    state = duel_state(GameConfig(start_gold=5000, start_lumber=2500))
    # no town hall yet: food cap 0, but training also needs a trainer
    apply_primitive_action(state, 0, PA.BUILD_0)
    run_ticks(state, 300)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    state.players[0].selected_entity = hall.id
    bag = state.players[0].resources
    assert bag.food_cap == 5 and bag.food_used == 1
    assert apply_primitive_action(state, 0, PA.BUILD_0)  # trains a worker
    new_worker = max(state.entities)
    assert state.entities[new_worker].state == EntityState.SPAWNING
    assert state.entities[new_worker].timer.total == 30
    assert bag.food_used == 2
    bag.food_used = 5
    assert not apply_primitive_action(state, 0, PA.BUILD_0)


# ---------------------------------------------------------------------------
# state machine evaluation
# ---------------------------------------------------------------------------

def test_spawning_transitions_to_idle_on_timer_zero():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250))
    apply_primitive_action(state, 0, PA.BUILD_0)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    assert evaluate_state_machine(state, hall.id) == EntityState.SPAWNING
    hall.timer_remaining = 0
    assert evaluate_state_machine(state, hall.id) == EntityState.IDLE


def test_evaluate_unknown_entity_raises():
    state = duel_state()
    with pytest.raises(KeyError):
        evaluate_state_machine(state, 12345)


def test_harvesting_exhausted_with_forever_walks_to_next():
    state, worker = harvesting_worker(amount=10, forever=True)
    state.map.res_amount[worker.target_tile] = 0
    assert evaluate_state_machine(state, worker.id) == EntityState.WALKING


def test_harvesting_exhausted_without_forever_idles():
    state, worker = harvesting_worker(amount=10, forever=False)
    state.map.res_amount[worker.target_tile] = 0
    assert evaluate_state_machine(state, worker.id) == EntityState.IDLE


def test_combat_with_dead_target_idles():
    state, footman = combat_pair()
    apply_primitive_action(state, 0, PA.ATTACK)
    del state.entities[2]
    assert evaluate_state_machine(state, footman.id) == EntityState.IDLE


# ---------------------------------------------------------------------------
# terminal detection
# ---------------------------------------------------------------------------

def test_winner_when_opponent_has_no_entities():
    state = duel_state()
    from gridrts.engine import _kill

    _kill(state, state.entities[2], credit=None)
    assert is_terminal(state).winner == 0
    tick(state)
    assert state.terminal is not None and state.terminal.winner == 0


def test_draw_at_tick_limit():
    state = duel_state(GameConfig(tick_limit=7))
    run_ticks(state, 7)
    assert state.terminal is not None and state.terminal.winner is None


def test_fresh_game_not_terminal():
    assert is_terminal(duel_state()) is None


def test_terminal_absorption():
    state = duel_state(GameConfig(tick_limit=5))
    run_ticks(state, 5)
    snapshot = state.state_hash()
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        run_ticks(state, 10)
    assert state.state_hash() == snapshot


# ---------------------------------------------------------------------------
# hashing and snapshots
# ---------------------------------------------------------------------------

ALLOWED_TRANSITIONS = {
    EntityState.SPAWNING: {EntityState.SPAWNING, EntityState.IDLE},
    EntityState.IDLE: {EntityState.IDLE, EntityState.WALKING, EntityState.HARVESTING,
                       EntityState.COMBAT, EntityState.BUILDING},
    EntityState.WALKING: {EntityState.WALKING, EntityState.IDLE, EntityState.HARVESTING,
                          EntityState.COMBAT, EntityState.BUILDING},
    EntityState.HARVESTING: {EntityState.HARVESTING, EntityState.IDLE,
                             EntityState.WALKING, EntityState.COMBAT,
                             EntityState.BUILDING},
    EntityState.COMBAT: {EntityState.COMBAT, EntityState.IDLE, EntityState.WALKING,
                         EntityState.HARVESTING, EntityState.BUILDING},
    EntityState.BUILDING: {EntityState.BUILDING, EntityState.IDLE, EntityState.WALKING,
                           EntityState.HARVESTING, EntityState.COMBAT},
}


def test_state_machine_soundness_under_fuzz():
    """Every observed transition is in the table; dead entities never return."""
    from gridrts.agents import random_agent
    from gridrts.rng import SplitMix64
    from gridrts.scenarios import load_scenario

    spec = load_scenario("10x10-2-FFA")
    cfg = GameConfig(auto_attack=True, engage_on_sight=True, harvest_forever=True,
                     start_gold=700, start_lumber=350, tick_limit=3000)
    state = new_game(cfg, spec, seed=3)
    rng = SplitMix64(99)
    seen_dead = set()
    last = {eid: e.state for eid, e in state.entities.items()}
    for step in range(250):
        if state.terminal is not None:
            break
        for p in (0, 1):
            if state.players[p].alive:
                apply_primitive_action(state, p, random_agent(state, p, rng))
        for _ in range(10):
            if state.terminal is not None:
                break
            tick(state)
            for eid, e in state.entities.items():
                assert eid not in seen_dead, "a removed entity came back"
                prev = last.get(eid)
                if prev is not None and prev != e.state:
                    assert e.state in ALLOWED_TRANSITIONS[prev], (prev, e.state)
                assert 0 < e.hp <= e.archetype.max_hp
            for eid in set(last) - set(state.entities):
                seen_dead.add(eid)
            last = {eid: e.state for eid, e in state.entities.items()}


def test_state_hash_purity():
    state = duel_state()
    assert state.state_hash() == state.state_hash()


def test_copy_is_deep_and_hash_equal():
    state = duel_state(GameConfig(start_gold=500, start_lumber=250))
    apply_primitive_action(state, 0, PA.BUILD_0)
    run_ticks(state, 37)
    snap = state.copy()
    assert snap.state_hash() == state.state_hash()
    run_ticks(state, 100)
    assert snap.state_hash() != state.state_hash()
    assert snap.tick == 37
