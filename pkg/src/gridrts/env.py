"""Gym-semantics episodic interface: reset / step / render.

One environment instance exposes exactly one externally-controlled player
(index 0); the remaining players are driven by in-process agents queried at
every decision point.  Rewards follow the scenario rule; observations are
the raw tensor (or a grayscale raster) for player 0.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .actions import CompoundAction, PrimitiveAction, expand_compound
from .agents import make_agent
from .config import GameConfig
from .engine import apply_primitive_action, new_game, tick
from .observation import CHANNELS, grayscale_image, raw_tensor
from .rng import SplitMix64
from .scenarios import (MetricsSnapshot, ScenarioSpec, load_scenario,
                        scenario_done, scenario_reward)


class StepResult(NamedTuple):
    observation: np.ndarray
    reward: float
    done: bool
    info: dict


class Environment:
    """Seeded, deterministic episode loop over engine + scenario + observation."""

    def __init__(self, scenario: str | ScenarioSpec = "15x15-2-FFA",
                 config: dict | None = None, seed: int = 0,
                 opponents: list[str] | None = None,
                 action_layer: str = "primitive", frame_skip: int = 10,
                 observation: str = "tensor"):
        self.spec = scenario if isinstance(scenario, ScenarioSpec) else load_scenario(scenario)
        overrides = dict(self.spec.config_overrides)
        user = dict(config or {})
        if not _truthy(user.get("durative", True)):
            clash = {"tick_action_cost", "tick_build_cost"} & set(user)
            if clash:
                raise ValueError(
                    f"non-durative games ignore tick costs; drop {sorted(clash)}")
        overrides.update(user)
        self.config = GameConfig().with_overrides(overrides)
        if action_layer not in ("primitive", "compound"):
            raise ValueError("action_layer must be 'primitive' or 'compound'")
        self.action_layer = action_layer
        if frame_skip < 1:
            raise ValueError("frame_skip must be >= 1")
        self.frame_skip = frame_skip
        if observation not in ("tensor", "grayscale"):
            raise ValueError("observation must be 'tensor' or 'grayscale'")
        self.observation_kind = observation

        n_opponents = self.spec.players - 1
        names = list(opponents) if opponents is not None else ["random"] * n_opponents
        if len(names) != n_opponents:
            raise ValueError(f"scenario has {n_opponents} opponent slots, got {len(names)}")
        self._opponent_names = names
        self._seed = seed
        self.state = None
        self._done = True
        self._opponents = []
        self._opponent_queues: list[list[PrimitiveAction]] = []
        self._last_ignored = False

    # -- Gym surface ---------------------------------------------------------

    def reset(self, seed: int | None = None) -> np.ndarray:
        if seed is not None:
            self._seed = seed
        self.state = new_game(self.config, self.spec, self._seed)
        rng = SplitMix64(self._seed ^ 0x5EED)
        self._opponents = [(make_agent(name), rng.fork()) for name in self._opponent_names]
        self._opponent_queues = [[] for _ in self._opponents]
        self._done = False
        self._last_ignored = False
        return self._observe()

    def step(self, action) -> StepResult:
        if self.state is None or self._done:
            raise RuntimeError("episode is done; call reset()")
        queue = self._expand_agent_action(action)
        prev = MetricsSnapshot(self.state, with_military=self.spec.objective == "army")
        ignored_any = False

        while True:
            act = queue.pop(0) if queue else PrimitiveAction.NO_ACTION
            applied = apply_primitive_action(self.state, 0, act)
            if not applied:
                ignored_any = True
                queue.clear()  # interruption: the rest of the plan is stale
            self._step_opponents()
            for _ in range(self.frame_skip):
                if scenario_done(self.spec, self.state):
                    break
                tick(self.state)
            if not queue or scenario_done(self.spec, self.state):
                break

        self._done = scenario_done(self.spec, self.state)
        self._last_ignored = ignored_any
        reward = scenario_reward(self.spec, prev, self.state, player=0)
        return StepResult(self._observe(), reward, self._done, self._info(ignored_any))

    def describe_spaces(self) -> dict:
        w, h = self.spec.map_size
        return {
            "actions": 6 if self.action_layer == "compound" else 16,
            "action_layer": self.action_layer,
            "observation_shape": (h, w, CHANNELS),
        }

    def render(self, mode: str = "grayscale", scale: int = 4) -> np.ndarray:
        from .observation import render_rgb

        if self.state is None:
            raise RuntimeError("reset() first")
        if mode == "grayscale":
            return grayscale_image(self.state, scale, player=0)
        if mode == "rgb":
            return render_rgb(self.state, scale, player=0)
        raise ValueError(f"unknown render mode {mode!r}")

    # -- internals -----------------------------------------------------------

    def _expand_agent_action(self, action) -> list[PrimitiveAction]:
        if isinstance(action, CompoundAction):
            return expand_compound(self.state, 0, action)
        if isinstance(action, PrimitiveAction):
            return [action]
        if isinstance(action, (int, np.integer)):
            if self.action_layer == "compound":
                return expand_compound(self.state, 0, CompoundAction(int(action)))
            return [PrimitiveAction(int(action))]
        raise ValueError(f"cannot interpret action {action!r}")

    def _step_opponents(self) -> None:
        for i, (policy, rng) in enumerate(self._opponents):
            player = i + 1
            if not self.state.players[player].alive:
                continue
            q = self._opponent_queues[i]
            if not q:
                choice = policy(self.state, player, rng)
                if isinstance(choice, CompoundAction):
                    q.extend(expand_compound(self.state, player, choice))
                    if not q:
                        q.append(PrimitiveAction.NO_ACTION)
                else:
                    q.append(choice)
            act = q.pop(0)
            if not apply_primitive_action(self.state, player, act):
                q.clear()

    def _observe(self) -> np.ndarray:
        if self.observation_kind == "grayscale":
            return grayscale_image(self.state, player=0)
        return raw_tensor(self.state, player=0)

    def _info(self, ignored: bool) -> dict:
        s = self.state
        return {
            "tick": s.tick,
            "action_ignored": ignored,
            "players": [
                {"score": p.score, "gold": p.resources.gold,
                 "lumber": p.resources.lumber, "oil": p.resources.oil,
                 "harvested": p.harvested_total, "alive": p.alive}
                for p in s.players
            ],
            "winner": None if s.terminal is None else s.terminal.winner,
        }


def _truthy(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("true", "1", "yes", "on")
    return bool(value)
