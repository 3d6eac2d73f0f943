"""Transcripts: a header, the ordered action records, and hash checkpoints.

A transcript replays without the agents that produced it; the recorded
primitives are applied at their original tick boundaries and the state hash
is re-verified at every checkpoint (every 100 ticks, plus the final state).
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .actions import PrimitiveAction
from .config import GameConfig
from .engine import apply_primitive_action, new_game, tick
from .scenarios import load_scenario

TRANSCRIPT_VERSION = 1
CHECKPOINT_EVERY = 100


@dataclass
class Transcript:
    scenario: str
    config: dict                      # fully resolved GameConfig fields
    seed: int
    version: int = TRANSCRIPT_VERSION
    actions: list = field(default_factory=list)      # [tick, player, action_id]
    checkpoints: list = field(default_factory=list)  # [tick, hash]
    final_tick: int = 0
    final_hash: int = 0

    def record_action(self, tick_no: int, player: int, action: PrimitiveAction) -> None:
        self.actions.append([tick_no, player, int(action)])

    def record_checkpoint(self, tick_no: int, digest: int) -> None:
        self.checkpoints.append([tick_no, digest])

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh)

    @classmethod
    def load(cls, path: str) -> "Transcript":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in doc.items() if k in known})


@dataclass
class ReplayResult:
    ok: bool
    mismatch_tick: int | None = None
    final_hash: int = 0
    ticks: int = 0

    @property
    def message(self) -> str:
        if self.ok:
            return f"replay ok: {self.ticks} ticks, hash {self.final_hash:#018x}"
        return f"hash mismatch at tick {self.mismatch_tick}"


def replay_transcript(t: Transcript) -> ReplayResult:
    """Re-run the transcript's actions and verify every hash checkpoint."""
    spec = load_scenario(t.scenario)
    config = GameConfig(**t.config)
    state = new_game(config, spec, t.seed)

    actions = sorted(t.actions, key=lambda r: (r[0], r[1]))
    checkpoints = sorted(t.checkpoints)
    ai = 0
    ci = 0

    def check() -> int | None:
        nonlocal ci
        while ci < len(checkpoints) and checkpoints[ci][0] == state.tick:
            if state.state_hash() != checkpoints[ci][1]:
                return state.tick
            ci += 1
        return None

    bad = check()
    while bad is None and state.tick < t.final_tick:
        while ai < len(actions) and actions[ai][0] == state.tick:
            _, player, action_id = actions[ai]
            apply_primitive_action(state, player, PrimitiveAction(action_id))
            ai += 1
        tick(state)
        bad = check()
        if state.terminal is not None and state.tick < t.final_tick:
            break

    if bad is not None:
        return ReplayResult(False, mismatch_tick=bad)
    digest = state.state_hash()
    if state.tick != t.final_tick or digest != t.final_hash:
        return ReplayResult(False, mismatch_tick=state.tick)
    return ReplayResult(True, final_hash=digest, ticks=state.tick)
