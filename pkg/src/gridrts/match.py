"""Headless match runner: in-process agents, transcripts, episode batches.

Every player is driven by a registered agent; decisions happen every
``frame_skip`` ticks.  Compound choices are expanded once and queued; an
ignored primitive flushes the rest of that queue (the plan went stale).
Each episode is a pure function of (scenario, config, agents, seed).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .actions import CompoundAction, PrimitiveAction, expand_compound
from .agents import make_agent
from .config import GameConfig
from .engine import apply_primitive_action, new_game, tick
from .replay import CHECKPOINT_EVERY, Transcript
from .rng import SplitMix64
from .scenarios import ScenarioSpec, load_scenario, scenario_done

DEFAULT_FRAME_SKIP = 10

# Frozen harness settings for the baseline-strength experiments: contact
# aggression and retaliation make random-vs-random games decisive, the
# 2 ticks/second clock brings the rule-based military phase (600 in-game
# seconds) within reach, and the raised draw cutoff leaves room to finish.
BASELINE_MATCH_CONFIG = {
    "auto_attack": True,
    "engage_on_sight": True,
    "ticks_per_second": 2,
    "tick_limit": 16000,
}
BASELINE_SCENARIO = "15x15-2-FFA"


@dataclass
class MatchResult:
    episode: int
    seed: int
    winner: int | None
    ticks: int
    scores: list[int]
    final_hash: int


class MatchRunner:
    def __init__(self, scenario: str | ScenarioSpec, agents: list[str],
                 config: dict | None = None, frame_skip: int = DEFAULT_FRAME_SKIP):
        self.spec = scenario if isinstance(scenario, ScenarioSpec) else load_scenario(scenario)
        if len(agents) != self.spec.players:
            raise ValueError(f"scenario wants {self.spec.players} agents, got {len(agents)}")
        self.agent_names = list(agents)
        overrides = dict(self.spec.config_overrides)
        overrides.update(config or {})
        self.config = GameConfig().with_overrides(overrides)
        self.frame_skip = frame_skip

    def run_episode(self, seed: int, episode: int = 0,
                    record: bool = False) -> tuple[MatchResult, Transcript | None]:
        state = new_game(self.config, self.spec, seed)
        base = SplitMix64((seed << 8) ^ episode)
        policies = [(make_agent(n), base.fork()) for n in self.agent_names]
        queues: list[list[PrimitiveAction]] = [[] for _ in policies]

        transcript = None
        if record:
            transcript = Transcript(scenario=self.spec.name, config=asdict(self.config),
                                    seed=seed)
            transcript.record_checkpoint(0, state.state_hash())
        last_cp = 0

        while not scenario_done(self.spec, state):
            for player, (policy, rng) in enumerate(policies):
                if not state.players[player].alive:
                    continue
                q = queues[player]
                if not q:
                    choice = policy(state, player, rng)
                    if isinstance(choice, CompoundAction):
                        q.extend(expand_compound(state, player, choice))
                        if not q:
                            q.append(PrimitiveAction.NO_ACTION)
                    else:
                        q.append(choice)
                act = q.pop(0)
                if transcript is not None:
                    transcript.record_action(state.tick, player, act)
                if not apply_primitive_action(state, player, act):
                    q.clear()
            for _ in range(self.frame_skip):
                if scenario_done(self.spec, state):
                    break
                tick(state)
                if transcript is not None and state.tick - last_cp >= CHECKPOINT_EVERY:
                    last_cp = state.tick
                    transcript.record_checkpoint(state.tick, state.state_hash())

        digest = state.state_hash()
        if transcript is not None:
            transcript.final_tick = state.tick
            transcript.final_hash = digest
        winner = state.terminal.winner if state.terminal is not None else None
        result = MatchResult(episode=episode, seed=seed, winner=winner, ticks=state.tick,
                             scores=[p.score for p in state.players], final_hash=digest)
        return result, transcript

    def run(self, episodes: int, seed: int = 0) -> list[MatchResult]:
        """Episode batch; episode k uses seed ``seed + k``."""
        return [self.run_episode(seed + k, episode=k)[0] for k in range(episodes)]


def run_episode_task(job: tuple) -> MatchResult:
    """Picklable one-episode job for process pools: determinism is keyed by
    (scenario, agents, config, frame_skip, seed, episode) alone."""
    scenario, agents, config, frame_skip, seed, episode = job
    runner = MatchRunner(scenario, agents, config=config, frame_skip=frame_skip)
    result, _ = runner.run_episode(seed, episode=episode)
    return result
