"""Versioned JSON message schema shared by the service and its clients.

Control-plane messages are JSON text frames; tensor observations travel as
separate binary frames carrying a blob id header (see ``encode_blob``).
Unknown extra fields are ignored on decode; unknown message types are a
recoverable error (the connection stays open).  The full field-by-field
description lives in docs/protocol.md.
"""
from __future__ import annotations

import hashlib
import json
import struct

from .actions import CompoundAction, PrimitiveAction
from .observation import CHANNEL_LAYOUT
from .state import GameState

PROTOCOL_VERSION = 1

MESSAGE_TYPES = frozenset({
    "hello", "create", "created", "observe", "state", "action",
    "step_result", "spectate", "error", "ping", "pong",
})

CONTROLLERS = frozenset({"remote", "random", "rule_based", "noop"})


class ProtocolError(ValueError):
    def __init__(self, message: str, code: str = "bad_message"):
        super().__init__(message)
        self.code = code


def encode(message: dict) -> bytes:
    """Serialize a message to a UTF-8 JSON frame."""
    if "type" not in message:
        raise ProtocolError("message missing 'type'")
    return json.dumps(message, separators=(",", ":"), sort_keys=True).encode("utf-8")


def decode(data: bytes | str) -> dict:
    """Parse and validate one frame; raises ProtocolError on garbage."""
    try:
        message = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ProtocolError(f"malformed JSON: {exc}") from exc
    if not isinstance(message, dict):
        raise ProtocolError("message must be a JSON object")
    mtype = message.get("type")
    if mtype is None:
        raise ProtocolError("message missing 'type'")
    if mtype not in MESSAGE_TYPES:
        raise ProtocolError(f"unknown message type {mtype!r}", code="unknown_type")
    return message


def validate_action(layer: str, action_id: int) -> None:
    if layer == "primitive":
        if not 0 <= int(action_id) < len(PrimitiveAction):
            raise ProtocolError(f"unknown action {action_id} in primitive layer",
                                code="unknown_action")
    elif layer == "compound":
        if not 0 <= int(action_id) < len(CompoundAction):
            raise ProtocolError(f"unknown action {action_id} in compound layer",
                                code="unknown_action")
    else:
        raise ProtocolError(f"unknown action layer {layer!r}", code="unknown_layer")


# ---------------------------------------------------------------------------
# Message builders
# ---------------------------------------------------------------------------

def hello_message(scenarios: list[dict]) -> dict:
    return {
        "type": "hello",
        "protocol_version": PROTOCOL_VERSION,
        "actions": {
            "primitive": [a.name for a in PrimitiveAction],
            "compound": [a.name for a in CompoundAction],
        },
        "channel_layout": list(CHANNEL_LAYOUT),
        "scenarios": scenarios,
    }


def error_message(message: str, code: str = "error", req_id=None) -> dict:
    out = {"type": "error", "code": code, "message": message}
    if req_id is not None:
        out["req_id"] = req_id
    return out


def map_digest(state: GameState) -> str:
    m = state.map
    payload = struct.pack(f"<2i{len(m.terrain)}b", m.width, m.height, *m.terrain)
    payload += struct.pack(f"<{len(m.res_amount)}i", *m.res_amount)
    return hashlib.blake2b(payload, digest_size=8).hexdigest()


def entity_fields(e) -> dict:
    return {"id": e.id, "owner": e.owner, "archetype": e.archetype.name,
            "x": e.x, "y": e.y, "hp": e.hp, "state": e.state.name}


def state_message(game_id: str, state: GameState) -> dict:
    return {
        "type": "state",
        "game_id": game_id,
        "tick": state.tick,
        "done": state.terminal is not None,
        "winner": None if state.terminal is None else state.terminal.winner,
        "players": [
            {"index": p.index, "gold": p.resources.gold, "lumber": p.resources.lumber,
             "oil": p.resources.oil, "food_used": p.resources.food_used,
             "food_cap": p.resources.food_cap, "unit_count": p.resources.unit_count,
             "score": p.score, "alive": p.alive, "selected": p.selected_entity}
            for p in state.players
        ],
        "entities": [entity_fields(e) for _, e in sorted(state.entities.items())],
        "map_digest": map_digest(state),
    }


def state_diff_message(game_id: str, state: GameState, previous: dict) -> dict:
    """Delta against the previous full state message (entity granularity)."""
    now = {e["id"]: e for e in state_message(game_id, state)["entities"]}
    before = {e["id"]: e for e in previous.get("entities", [])}
    changed = [e for eid, e in sorted(now.items()) if before.get(eid) != e]
    removed = sorted(eid for eid in before if eid not in now)
    return {
        "type": "state",
        "game_id": game_id,
        "diff": True,
        "tick": state.tick,
        "done": state.terminal is not None,
        "winner": None if state.terminal is None else state.terminal.winner,
        "changed": changed,
        "removed": removed,
    }


# ---------------------------------------------------------------------------
# Binary observation frames
# ---------------------------------------------------------------------------

def encode_blob(blob_id: int, payload: bytes) -> bytes:
    return struct.pack("<I", blob_id) + payload


def decode_blob(frame: bytes) -> tuple[int, bytes]:
    if len(frame) < 4:
        raise ProtocolError("blob frame too short")
    (blob_id,) = struct.unpack_from("<I", frame)
    return blob_id, frame[4:]
