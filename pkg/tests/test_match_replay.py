import json

import pytest

from gridrts.match import BASELINE_MATCH_CONFIG, MatchRunner
from gridrts.replay import Transcript, replay_transcript


def test_same_seed_same_final_hash():
    runner = MatchRunner("10x10-2-FFA", ["random", "random"],
                         config={"tick_limit": 500})
    a, _ = runner.run_episode(seed=12)
    b, _ = runner.run_episode(seed=12)
    assert a.final_hash == b.final_hash
    assert a.ticks == b.ticks and a.winner == b.winner


def test_different_seeds_diverge():
    """With randomness consumed, differing seeds differ at some tick."""
    runner = MatchRunner("10x10-2-FFA", ["random", "random"],
                         config={"tick_limit": 500})
    a, _ = runner.run_episode(seed=1)
    b, _ = runner.run_episode(seed=2)
    assert a.final_hash != b.final_hash


def test_transcript_roundtrip_and_replay(tmp_path):
    runner = MatchRunner("15x15-2-FFA", ["rule_based", "random"],
                         config=BASELINE_MATCH_CONFIG)
    result, transcript = runner.run_episode(seed=3, record=True)
    path = tmp_path / "episode.json"
    transcript.save(str(path))
    loaded = Transcript.load(str(path))
    assert loaded.final_hash == result.final_hash
    verdict = replay_transcript(loaded)
    assert verdict.ok, verdict.message
    assert verdict.ticks == result.ticks


def test_tampered_transcript_reports_mismatch_tick(tmp_path):
    runner = MatchRunner("10x10-2-FFA", ["random", "random"],
                         config={"tick_limit": 600})
    _, transcript = runner.run_episode(seed=4, record=True)
    assert len(transcript.actions) > 10
    # corrupt one recorded action mid-game
    tampered = transcript.actions[len(transcript.actions) // 2]
    tampered[2] = (tampered[2] + 1) % 16
    verdict = replay_transcript(transcript)
    assert not verdict.ok
    assert verdict.mismatch_tick is not None
    assert "hash mismatch at tick" in verdict.message


def test_transcript_checkpoints_every_100_ticks():
    runner = MatchRunner("10x10-2-FFA", ["noop", "noop"],
                         config={"tick_limit": 450})
    _, transcript = runner.run_episode(seed=0, record=True)
    ticks = [t for t, _ in transcript.checkpoints]
    assert ticks == [0, 100, 200, 300, 400]
    assert transcript.final_tick == 450


def test_checkpoint_hashes_match_recomputation():
    runner = MatchRunner("10x10-2-FFA", ["random", "random"],
                         config={"tick_limit": 300})
    result, transcript = runner.run_episode(seed=9, record=True)
    assert transcript.final_hash == result.final_hash
    assert transcript.checkpoints[0][0] == 0


def test_transcript_json_is_plain_data(tmp_path):
    runner = MatchRunner("10x10-2-FFA", ["noop", "noop"], config={"tick_limit": 120})
    _, transcript = runner.run_episode(seed=1, record=True)
    path = tmp_path / "t.json"
    transcript.save(str(path))
    doc = json.loads(path.read_text())
    assert doc["version"] == 1
    assert doc["scenario"] == "10x10-2-FFA"
    assert isinstance(doc["config"], dict)


def test_worker_pool_task_matches_inline(tmp_path):
    from gridrts.match import run_episode_task

    inline = MatchRunner("10x10-2-FFA", ["random", "random"],
                         config={"tick_limit": 300}).run_episode(seed=8, episode=2)[0]
    pooled = run_episode_task(("10x10-2-FFA", ["random", "random"],
                               {"tick_limit": 300}, 10, 8, 2))
    assert pooled.final_hash == inline.final_hash
