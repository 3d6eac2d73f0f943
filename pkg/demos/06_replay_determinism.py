"""Transcripts: record a game, replay it bit-exactly, catch tampering.

Run: python demos/06_replay_determinism.py
"""
from gridrts import MatchRunner, replay_transcript

runner = MatchRunner("10x10-2-FFA", ["random", "random"],
                     config={"tick_limit": 800, "auto_attack": True,
                             "engage_on_sight": True})
result, transcript = runner.run_episode(seed=21, record=True)
print(f"recorded: {result.ticks} ticks, {len(transcript.actions)} actions, "
      f"{len(transcript.checkpoints)} hash checkpoints")
print(f"final hash {result.final_hash:#018x}")

verdict = replay_transcript(transcript)
print("replay:", verdict.message)
assert verdict.ok

# flip one recorded action and watch the hashes diverge
transcript.actions[len(transcript.actions) // 2][2] ^= 1
verdict = replay_transcript(transcript)
print("after tampering:", verdict.message)
assert not verdict.ok
