"""Acceptance suite: one test per gate, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and measured numbers.
"""
import math
import random
import time

import pytest

from gridrts import bench
from gridrts.actions import PrimitiveAction as PA
from gridrts.config import GameConfig
from gridrts.engine import _start_walk, apply_primitive_action, new_game, tick
from gridrts.entity import EntityState
from gridrts.match import BASELINE_MATCH_CONFIG, BASELINE_SCENARIO, MatchRunner
from gridrts.pathfinding import PathQuery, find_path_bfs, find_path_jps
from gridrts.replay import replay_transcript
from gridrts.scenarios import load_scenario, scenario_names

from conftest import map_from_rows


def report(line):
    print(f"\n{line}")


# ---------------------------------------------------------------------------
# 1. Determinism / replay
# ---------------------------------------------------------------------------

def random_config(rng):
    overrides = {
        "durative": rng.random() < 0.7,
        "instant_town_hall": rng.random() < 0.5,
        "harvest_forever": rng.random() < 0.5,
        "auto_attack": rng.random() < 0.5,
        "engage_on_sight": rng.random() < 0.5,
        "pathfinding_enabled": rng.random() < 0.8,
        "tick_limit": rng.randrange(300, 700),
        "start_gold": rng.choice([0, 600]),
        "start_lumber": rng.choice([0, 300]),
    }
    if overrides["durative"]:
        overrides["instant_walking"] = rng.random() < 0.5
        overrides["instant_building"] = rng.random() < 0.5
    return overrides


def test_determinism_replay_100_random_config_games():
    start = time.perf_counter()
    for seed in range(100):
        rng = random.Random(seed * 7919 + 13)
        runner = MatchRunner("10x10-2-FFA", ["random", "random"],
                             config=random_config(rng))
        result, transcript = runner.run_episode(seed, record=True)
        verdict = replay_transcript(transcript)
        assert verdict.ok, f"seed {seed}: {verdict.message}"
        assert verdict.final_hash == result.final_hash
    elapsed = time.perf_counter() - start
    assert elapsed < 120, f"determinism suite took {elapsed:.0f}s (budget 120s)"
    report(f"PASS determinism/replay: 100/100 random-config games replay "
           f"hash-exact in {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 2. Path-finding oracle
# ---------------------------------------------------------------------------

def test_pathfinding_oracle_thousand_maps():
    start = time.perf_counter()
    rng = random.Random(0xDEC0DE)
    queries = 0
    mismatches = 0
    for _ in range(1000):
        w, h = rng.randint(8, 16), rng.randint(8, 16)
        density = rng.choice([0.0, 0.1, 0.2, 0.3, 0.4])
        rows = ["".join("." if rng.random() > density else "#" for _ in range(w))
                for _ in range(h)]
        cells = [(x, y) for y in range(h) for x in range(w) if rows[y][x] == "."]
        if len(cells) < 2:
            continue

        def walk(x, y, rows=rows, w=w, h=h):
            return 0 <= x < w and 0 <= y < h and rows[y][x] == "."

        for _ in range(12):
            a, b = rng.choice(cells), rng.choice(cells)
            q = PathQuery(walk, w, h, a, b)
            pj, pb = find_path_jps(q), find_path_bfs(q)
            queries += 1
            if (pj is None) != (pb is None) or (pj is not None and len(pj) != len(pb)):
                mismatches += 1
    elapsed = time.perf_counter() - start
    assert queries >= 10_000
    assert mismatches == 0
    assert elapsed < 60, f"oracle took {elapsed:.0f}s (budget 60s)"
    report(f"PASS path-finding oracle: {queries} queries on 1000 maps, "
           f"0 mismatches in {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 3. Tick semantics (exact, no tolerance)
# ---------------------------------------------------------------------------

def corridor_state(config):
    return new_game(config, map_from_rows(["0" + "." * 11]), seed=0)


def ticks_until(state, pred, cap=2000):
    n = 0
    while not pred() and n < cap:
        tick(state)
        n += 1
    assert pred(), "condition never met"
    return n


def test_tick_semantics_exact():
    # durative: 10 tiles in exactly 100 ticks
    state = corridor_state(GameConfig())
    worker = state.entities[1]
    assert _start_walk(state, worker, (10, 0))
    n = ticks_until(state, lambda: worker.pos == (10, 0))
    assert n == 100, f"durative corridor took {n} ticks"

    # instant walking: each move lands on the very next tick
    state = corridor_state(GameConfig(instant_walking=True))
    worker = state.entities[1]
    assert _start_walk(state, worker, (10, 0))
    n = ticks_until(state, lambda: worker.pos == (10, 0))
    assert n == 10, f"instant corridor took {n} ticks"

    # durative building: exactly 300 ticks
    state = new_game(GameConfig(start_gold=500, start_lumber=250),
                     map_from_rows(["0...."]), seed=0)
    assert apply_primitive_action(state, 0, PA.BUILD_0)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    n = ticks_until(state, lambda: hall.state == EntityState.IDLE)
    assert n == 300, f"building took {n} ticks"

    # instant building: completes on the next tick
    state = new_game(GameConfig(start_gold=500, start_lumber=250,
                                instant_building=True),
                     map_from_rows(["0...."]), seed=0)
    apply_primitive_action(state, 0, PA.BUILD_0)
    hall = next(e for e in state.entities.values() if e.archetype.name == "TownHall")
    n = ticks_until(state, lambda: hall.state == EntityState.IDLE)
    assert n == 1, f"instant building took {n} ticks"
    report("PASS tick semantics: 10-tile corridor = 100 ticks durative / 10 instant; "
           "building = 300 ticks durative / 1 instant")


# ---------------------------------------------------------------------------
# 4. Resource bounds fuzz
# ---------------------------------------------------------------------------

def test_resource_bounds_fuzz_100k_ticks():
    start = time.perf_counter()
    fuzz_config = {
        "auto_attack": True, "engage_on_sight": True, "harvest_forever": True,
        "start_gold": 800, "start_lumber": 400, "tick_limit": 10**6,
    }
    budget = 100_000
    ticked = 0
    violations = 0
    per_scenario = budget // len(scenario_names()) + 1
    from gridrts.agents import random_agent
    from gridrts.rng import SplitMix64

    for name in scenario_names():
        spec = load_scenario(name)
        overrides = dict(spec.config_overrides)
        overrides.update(fuzz_config)
        runner = MatchRunner(spec, ["random"] * spec.players, config=overrides)
        rng = SplitMix64(1234)
        local = 0
        game_seed = 0
        state = new_game(runner.config, spec, seed=game_seed)
        while local < per_scenario:
            if state.terminal is not None:
                game_seed += 1
                state = new_game(runner.config, spec, seed=game_seed)
            for p in range(spec.players):
                if state.players[p].alive:
                    apply_primitive_action(state, p, random_agent(state, p, rng))
            for _ in range(10):
                if state.terminal is not None:
                    break
                tick(state)
                local += 1
                for p in state.players:
                    bag = p.resources
                    if not (0 <= bag.gold <= 10**6 and 0 <= bag.lumber <= 10**6
                            and 0 <= bag.oil <= 10**6
                            and 0 <= bag.food_used <= 6000
                            and 0 <= bag.unit_count <= 2000):
                        violations += 1
        ticked += local
    elapsed = time.perf_counter() - start
    assert ticked >= budget, f"only fuzzed {ticked} ticks"
    assert violations == 0
    report(f"PASS resource bounds: {ticked} fuzzed ticks across 9 scenarios, "
           f"0 violations in {elapsed:.0f}s")


# ---------------------------------------------------------------------------
# 5. Scaling laws
# ---------------------------------------------------------------------------

def test_scaling_laws():
    start = time.perf_counter()
    sizes = [10, 15, 21, 31]
    ladder = [2, 5, 10, 20, 40]
    on_cfg = bench.maximal_config()
    off_cfg = on_cfg.with_overrides({"pathfinding_enabled": False})

    map_on = bench.run_update_benchmark(sizes, [1], on_cfg, duration=0.8)
    units_on = bench.run_update_benchmark([31], ladder, on_cfg, duration=0.6)
    fit_on = bench.fit_scaling(map_on + units_on)
    assert fit_on["map_slope_r2"] >= 0.9, fit_on

    map_off = bench.run_update_benchmark(sizes, [1], off_cfg, duration=0.3)
    units_off = bench.run_update_benchmark([31], ladder, off_cfg, duration=0.3)
    fit_off = bench.fit_scaling(map_off + units_off)

    assert fit_on["unit_curve_class"] == "superlinear", fit_on
    assert fit_off["unit_curve_class"] == "linear", fit_off
    elapsed = time.perf_counter() - start
    assert elapsed < 600, f"scaling suite took {elapsed:.0f}s (budget 600s)"
    report(f"PASS scaling laws: map R^2={fit_on['map_slope_r2']:.3f} (>=0.9), "
           f"unit growth {fit_on['unit_loglog_slope']:.2f} superlinear with "
           f"pathfinding / {fit_off['unit_loglog_slope']:.2f} linear without, "
           f"in {elapsed:.0f}s")


# ---------------------------------------------------------------------------
# 6. Configuration throughput ratio
# ---------------------------------------------------------------------------

def test_configuration_throughput_ratio():
    mins = bench.run_update_benchmark([10], [1], bench.minimal_config(),
                                      duration=0.6)
    maxs = bench.run_update_benchmark([31], [20], bench.maximal_config(),
                                      duration=0.6)
    ups_min, ups_max = mins[0].ups, maxs[0].ups
    ratio = ups_min / ups_max
    assert ratio >= 50, f"ratio {ratio:.1f}x below the 50x gate"
    met = "meets" if ups_min >= 1e6 else "misses"
    report(f"PASS throughput ratio: minimal {ups_min:,.0f} ups vs maximal "
           f"{ups_max:,.0f} ups = {ratio:.0f}x (gate 50x); non-gating 1e6 ups "
           f"target: {met} ({ups_min/1e6:.2f}x)")


# ---------------------------------------------------------------------------
# 7. Baseline strength
# ---------------------------------------------------------------------------

def test_baseline_random_vs_random_balanced():
    start = time.perf_counter()
    runner = MatchRunner(BASELINE_SCENARIO, ["random", "random"],
                         config=BASELINE_MATCH_CONFIG)
    results = runner.run(500, seed=0)
    w0 = sum(1 for r in results if r.winner == 0)
    w1 = sum(1 for r in results if r.winner == 1)
    decisive = w0 + w1
    elapsed = time.perf_counter() - start
    assert decisive > 0
    rate = w0 / decisive
    assert abs(rate - 0.5) <= 0.06, f"player 0 wins {rate:.1%} of decisive games"
    assert elapsed < 600
    report(f"PASS baseline random-vs-random: {w0}/{w1} wins ({500 - decisive} draws), "
           f"side split {rate:.1%} within 50%+-6%, in {elapsed:.0f}s")


def test_baseline_rule_based_beats_random():
    start = time.perf_counter()
    runner = MatchRunner(BASELINE_SCENARIO, ["rule_based", "random"],
                         config=BASELINE_MATCH_CONFIG)
    results = runner.run(500, seed=0)
    wins = sum(1 for r in results if r.winner == 0)
    elapsed = time.perf_counter() - start
    assert wins / 500 >= 0.70, f"rule_based won only {wins}/500"
    assert elapsed < 600
    report(f"PASS baseline rule-based: {wins}/500 wins "
           f"({wins/5:.1f}%, gate 70%), in {elapsed:.0f}s")


# ---------------------------------------------------------------------------
# 8. Scenario registry via the CLI
# ---------------------------------------------------------------------------

def test_scenario_registry_cli(capsys):
    from gridrts.cli import main

    assert main(["scenarios", "--list"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    rows = {ln.split()[0]: ln for ln in lines}
    assert list(rows) == ["10x10-2-FFA", "15x15-2-FFA", "21x21-2-FFA",
                          "31x31-2-FFA", "31x31-4-FFA", "31x31-6-FFA",
                          "solo-score", "solo-resources", "solo-army"]
    expected_sizes = {"10x10-2-FFA": "10x10", "15x15-2-FFA": "15x15",
                      "21x21-2-FFA": "21x21", "31x31-2-FFA": "31x31",
                      "31x31-4-FFA": "31x31", "31x31-6-FFA": "31x31",
                      "solo-score": "10x10", "solo-resources": "10x10",
                      "solo-army": "10x10"}
    for name, size in expected_sizes.items():
        assert f"map={size}" in rows[name]
    for name, ticks in (("solo-score", 1200), ("solo-resources", 600),
                        ("solo-army", 1200)):
        assert f"episode_ticks={ticks}" in rows[name]
    report("PASS scenario registry: nine names, sizes, and episode ticks exact")


# ---------------------------------------------------------------------------
# 9. Env reward conservation
# ---------------------------------------------------------------------------

def test_env_conservation_100_episodes():
    from gridrts.agents import random_agent
    from gridrts.env import Environment
    from gridrts.rng import SplitMix64

    start = time.perf_counter()
    env = Environment("solo-resources", seed=0)
    for episode in range(100):
        env.reset(seed=episode)
        rng = SplitMix64(episode ^ 0xFACE)
        total = 0.0
        done = False
        while not done:
            action = random_agent(env.state, 0, rng)
            _, reward, done, info = env.step(action)
            total += reward
        harvested = env.state.players[0].harvested_total
        assert total == harvested, f"episode {episode}: {total} != {harvested}"
    elapsed = time.perf_counter() - start
    report(f"PASS env conservation: 100 episodes, reward sum == harvested total "
           f"exactly, in {elapsed:.0f}s")


# ---------------------------------------------------------------------------
# 10. Protocol golden files + lock-step server replay
# ---------------------------------------------------------------------------

def test_protocol_golden_and_lockstep_replay():
    import os

    from fastapi.testclient import TestClient

    from gridrts.protocol import decode, encode
    from gridrts.replay import Transcript
    from gridrts.server import create_app

    fixture_dir = os.path.join(os.path.dirname(__file__), "fixtures", "protocol")
    for fn in sorted(os.listdir(fixture_dir)):
        with open(os.path.join(fixture_dir, fn), "rb") as fh:
            message = decode(fh.read())
        assert decode(encode(message)) == message

    app = create_app()
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as p0, \
                client.websocket_connect("/ws") as p1:
            p0.receive_json()
            p1.receive_json()
            p0.send_json({"type": "create", "req_id": "c", "scenario": "10x10-2-FFA",
                          "seed": 21, "mode": "lockstep",
                          "config": {"tick_limit": 400},
                          "players": [{"controller": "remote"},
                                      {"controller": "remote"}]})
            created = p0.receive_json()
            game_id = created["game_id"]
            p0.receive_json()  # initial state
            p1.send_json({"type": "observe", "req_id": "j", "game_id": game_id,
                          "player": 1})
            p1.receive_json()  # created ack

            rng = random.Random(5)
            for k in range(25):
                for ws, player in ((p0, 0), (p1, 1)):
                    ws.send_json({"type": "action", "req_id": f"{player}-{k}",
                                  "game_id": game_id, "player": player,
                                  "layer": "primitive",
                                  "action_id": rng.randrange(16)})
                for ws in (p0, p1):
                    msg = ws.receive_json()
                    while msg["type"] != "step_result":
                        msg = ws.receive_json()

            game = app.state.server.games[game_id]
            live_hash = game.state.state_hash()
            doc = client.get(f"/games/{game_id}/transcript").json()
            transcript = Transcript(**{k: v for k, v in doc.items()
                                       if k in Transcript.__dataclass_fields__})
            transcript.final_tick = game.state.tick
            transcript.final_hash = live_hash
            verdict = replay_transcript(transcript)
            assert verdict.ok, verdict.message
            assert verdict.final_hash == live_hash
    report("PASS protocol: 11 golden fixtures round-trip; lock-step 2-remote "
           "transcript replays offline to the same final hash")
