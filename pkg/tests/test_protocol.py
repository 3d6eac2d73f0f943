import json
import os

import pytest

from gridrts.config import GameConfig
from gridrts.engine import new_game
from gridrts.protocol import (MESSAGE_TYPES, PROTOCOL_VERSION, ProtocolError,
                              decode, decode_blob, encode, encode_blob,
                              hello_message, map_digest, state_message,
                              state_diff_message, validate_action)
from gridrts.scenarios import load_scenario

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures", "protocol")


def fixture_files():
    return sorted(os.listdir(FIXTURE_DIR))


def test_fixture_coverage_matches_message_types():
    names = {fn[:-5] for fn in fixture_files()}
    assert names == set(MESSAGE_TYPES)


@pytest.mark.parametrize("fn", fixture_files())
def test_golden_fixture_roundtrip(fn):
    with open(os.path.join(FIXTURE_DIR, fn), "rb") as fh:
        raw = fh.read()
    message = decode(raw)
    again = decode(encode(message))
    assert again == message
    assert decode(encode(again)) == message


def test_decode_rejects_garbage():
    with pytest.raises(ProtocolError, match="malformed JSON"):
        decode(b"{nope")
    with pytest.raises(ProtocolError, match="missing 'type'"):
        decode(b'{"game_id": "g1"}')
    with pytest.raises(ProtocolError, match="unknown message type"):
        decode(b'{"type": "teleport"}')
    with pytest.raises(ProtocolError, match="JSON object"):
        decode(b"[1,2]")


def test_unknown_fields_are_ignored():
    msg = decode(b'{"type": "ping", "req_id": "x", "future_field": 9}')
    assert msg["future_field"] == 9  # carried through, never rejected


def test_action_id_validation():
    validate_action("primitive", 15)
    validate_action("compound", 5)
    with pytest.raises(ProtocolError, match="unknown action 16"):
        validate_action("primitive", 16)
    with pytest.raises(ProtocolError, match="unknown action 6"):
        validate_action("compound", 6)
    with pytest.raises(ProtocolError, match="layer"):
        validate_action("psychic", 0)


def test_hello_contains_action_tables_and_channels():
    msg = hello_message(scenarios=[])
    assert msg["protocol_version"] == PROTOCOL_VERSION
    assert len(msg["actions"]["primitive"]) == 16
    assert len(msg["actions"]["compound"]) == 6
    assert msg["channel_layout"][0] == "terrain"
    # matches the committed golden hello
    with open(os.path.join(FIXTURE_DIR, "hello.json")) as fh:
        golden = json.load(fh)
    assert golden["actions"] == msg["actions"]
    assert golden["channel_layout"] == msg["channel_layout"]


def test_state_message_fields():
    state = new_game(GameConfig(), load_scenario("10x10-2-FFA"), seed=1)
    msg = state_message("g7", state)
    assert decode(encode(msg)) == msg
    assert msg["tick"] == 0 and msg["done"] is False
    assert len(msg["players"]) == 2 and len(msg["entities"]) == 2
    assert msg["entities"][0]["archetype"] == "Worker"
    assert len(msg["map_digest"]) == 16


def test_map_digest_tracks_deposits():
    state = new_game(GameConfig(), load_scenario("10x10-2-FFA"), seed=1)
    before = map_digest(state)
    tiles = state.map.resource_tiles()
    state.map.deplete(state.map.index(tiles[0][0], tiles[0][1]), 10)
    assert map_digest(state) != before


def test_state_diff_message():
    state = new_game(GameConfig(), load_scenario("10x10-2-FFA"), seed=1)
    full = state_message("g1", state)
    w = state.entities[1]
    m = state.map
    m.occupant[w.y * m.width + w.x] = -1
    w.x += 1
    m.occupant[w.y * m.width + w.x] = w.id
    diff = state_diff_message("g1", state, full)
    assert diff["diff"] is True
    assert [e["id"] for e in diff["changed"]] == [1]
    assert diff["removed"] == []


def test_blob_framing():
    blob_id, payload = decode_blob(encode_blob(7, b"\x01\x02\x03"))
    assert blob_id == 7 and payload == b"\x01\x02\x03"
    with pytest.raises(ProtocolError):
        decode_blob(b"\x00")
