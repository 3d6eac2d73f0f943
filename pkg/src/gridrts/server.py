"""Game service: many concurrent games over a duplex WebSocket endpoint.

Remote players and spectators speak the wire protocol on ``/ws``; game
health is on ``/healthz``; a finished/live game's transcript is at
``/games/{id}/transcript``.  Each game advances in one of two modes:

  lockstep   advance only when every claimed remote player has an action
             (or queued plan) due; the mode for RL harnesses and replays.
  realtime   a ticker paces the game by wall clock at ticks_per_second;
             missing actions default to NO_ACTION; a disconnected player
             forfeits after a five-simulated-second grace window.

One asyncio task context owns each game's state; connection handlers only
interact with it under the per-game lock, so a crashing handler can never
corrupt another game.
"""
from __future__ import annotations

import asyncio
import itertools
import logging
import os
from dataclasses import asdict

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from .actions import CompoundAction, PrimitiveAction, expand_compound
from .agents import make_agent
from .config import GameConfig
from .engine import _kill, apply_primitive_action, new_game, tick
from .observation import raw_tensor, tensor_to_bytes
from .protocol import (PROTOCOL_VERSION, ProtocolError, decode, encode,
                       encode_blob, error_message, hello_message,
                       state_diff_message, state_message, validate_action)
from .replay import CHECKPOINT_EVERY, Transcript
from .rng import SplitMix64
from .scenarios import load_scenario, scenario_done, scenario_names
from .state import GameState

log = logging.getLogger("gridrts.server")

GRACE_SECONDS = 5  # simulated seconds before a vanished player forfeits


def forfeit(state: GameState, player: int) -> None:
    """Remove every entity the player owns; elimination follows naturally."""
    for e in [e for e in state.entities.values() if e.owner == player]:
        _kill(state, e, credit=None)


class GameSession:
    _ids = itertools.count(1)

    def __init__(self, spec, config: GameConfig, seed: int, controllers: list[str],
                 mode: str, frame_skip: int):
        self.game_id = f"g{next(self._ids)}"
        self.spec = spec
        self.config = config
        self.mode = mode
        self.frame_skip = frame_skip
        self.state = new_game(config, spec, seed)
        self.controllers = controllers
        rng = SplitMix64(seed ^ 0xC0FFEE)
        self.agents = {i: (make_agent(c), rng.fork())
                       for i, c in enumerate(controllers) if c != "remote"}
        self.queues: dict[int, list[PrimitiveAction]] = {i: [] for i in range(len(controllers))}
        self.remote_slots = [i for i, c in enumerate(controllers) if c == "remote"]
        self.claims: dict[int, WebSocket | None] = {i: None for i in self.remote_slots}
        self.pending: dict[int, dict] = {}
        self.subscribers: dict[WebSocket, str] = {}
        self.lock = asyncio.Lock()
        self.transcript = Transcript(scenario=spec.name, config=asdict(config), seed=seed)
        self.transcript.record_checkpoint(0, self.state.state_hash())
        self._last_checkpoint = 0
        self._last_full: dict | None = None
        self._terminal_broadcast = False
        self.grace_deadline: dict[int, int] = {}
        self.ticker: asyncio.Task | None = None
        self.blob_ids = itertools.count(1)

    # -- coordination --------------------------------------------------------

    @property
    def done(self) -> bool:
        return scenario_done(self.spec, self.state)

    def ready(self) -> bool:
        """Lockstep gate: every claimed remote slot has input due."""
        for slot in self.remote_slots:
            if self.claims[slot] is None:
                return False
            if slot not in self.pending and not self.queues[slot]:
                return False
        return True

    def advance(self, fill_noaction: bool = False) -> dict[int, dict]:
        """One decision round plus frame_skip ticks; returns per-remote acks."""
        acks: dict[int, dict] = {}
        state = self.state
        for player in range(len(self.controllers)):
            if not state.players[player].alive:
                self.pending.pop(player, None)
                continue
            q = self.queues[player]
            act = None
            req_id = None
            if player in self.agents:
                if not q:
                    policy, rng = self.agents[player]
                    choice = policy(state, player, rng)
                    if isinstance(choice, CompoundAction):
                        q.extend(expand_compound(state, player, choice))
                        if not q:
                            q.append(PrimitiveAction.NO_ACTION)
                    else:
                        q.append(choice)
                act = q.pop(0)
            else:
                msg = self.pending.pop(player, None)
                if msg is not None:
                    req_id = msg.get("req_id")
                    if msg["layer"] == "compound":
                        q.clear()
                        q.extend(expand_compound(state, player,
                                                 CompoundAction(msg["action_id"])))
                        if not q:
                            q.append(PrimitiveAction.NO_ACTION)
                    else:
                        q.append(PrimitiveAction(msg["action_id"]))
                if q:
                    act = q.pop(0)
                elif fill_noaction:
                    act = PrimitiveAction.NO_ACTION
                else:
                    continue
            self.transcript.record_action(state.tick, player, act)
            applied = apply_primitive_action(state, player, act)
            if not applied:
                q.clear()
            if player in self.claims:
                acks[player] = {"req_id": req_id, "action_ignored": not applied,
                                "action": int(act)}

        for _ in range(self.frame_skip):
            if self.done:
                break
            tick(state)
            if state.tick - self._last_checkpoint >= CHECKPOINT_EVERY:
                self._last_checkpoint = state.tick
                self.transcript.record_checkpoint(state.tick, state.state_hash())
            self._enforce_grace()
        if self.done and not self.transcript.final_tick:
            self.transcript.final_tick = state.tick
            self.transcript.final_hash = state.state_hash()
        return acks

    def _enforce_grace(self) -> None:
        for player, deadline in list(self.grace_deadline.items()):
            if self.state.tick >= deadline:
                del self.grace_deadline[player]
                if self.state.players[player].alive:
                    log.info("game=%s player=%s forfeits (grace expired)",
                             self.game_id, player)
                    forfeit(self.state, player)
                    tick(self.state)  # let the victory check run

    def state_payload(self, for_socket: WebSocket | None = None) -> dict:
        mode = self.subscribers.get(for_socket, "full") if for_socket else "full"
        if mode == "diff" and self._last_full is not None:
            return state_diff_message(self.game_id, self.state, self._last_full)
        return state_message(self.game_id, self.state)


class Server:
    def __init__(self, max_games: int = 64):
        self.max_games = max_games
        self.games: dict[str, GameSession] = {}

    def active_games(self) -> int:
        return sum(1 for g in self.games.values() if not g.done)


def create_app(max_games: int = 64, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="gridrts service")
    server = Server(max_games)
    app.state.server = server

    @app.get("/healthz")
    async def healthz():
        return {"games_active": server.active_games(),
                "protocol_version": PROTOCOL_VERSION}

    @app.get("/games/{game_id}/transcript")
    async def transcript(game_id: str):
        game = server.games.get(game_id)
        if game is None:
            return JSONResponse({"error": "unknown game"}, status_code=404)
        return asdict(game.transcript)

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        await _send(ws, hello_message(_scenario_listing()))
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    message = decode(raw)
                except ProtocolError as exc:
                    await _send(ws, error_message(str(exc), exc.code))
                    continue
                try:
                    await _dispatch(server, ws, message)
                except ProtocolError as exc:
                    await _send(ws, error_message(str(exc), exc.code,
                                                  message.get("req_id")))
                except WebSocketDisconnect:
                    raise
                except Exception as exc:  # one game's bug must not kill others
                    log.exception("handler error: %s", exc)
                    await _send(ws, error_message(f"internal error: {exc}",
                                                  "internal", message.get("req_id")))
        except WebSocketDisconnect:
            pass
        finally:
            await _cleanup_connection(server, ws)

    if static_dir is None:
        static_dir = os.environ.get("GRIDRTS_WEB_DIR")
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="web")
    return app


def _scenario_listing() -> list[dict]:
    out = []
    for name in scenario_names():
        spec = load_scenario(name)
        w, h = spec.map_size
        out.append({"name": name, "players": spec.players, "map_size": [w, h],
                    "episode_ticks": spec.episode_ticks})
    return out


async def _send(ws: WebSocket, message: dict) -> None:
    await ws.send_text(encode(message).decode("utf-8"))


async def _broadcast(game: GameSession) -> None:
    full = state_message(game.game_id, game.state)
    dead = []
    for sub, mode in game.subscribers.items():
        try:
            if mode == "diff" and game._last_full is not None:
                await _send(sub, state_diff_message(game.game_id, game.state,
                                                    game._last_full))
            else:
                await _send(sub, full)
        except Exception:
            dead.append(sub)
    for sub in dead:
        game.subscribers.pop(sub, None)
    game._last_full = full
    if game.done and not game._terminal_broadcast:
        game._terminal_broadcast = True
        log.info("game=%s done tick=%s winner=%s", game.game_id, game.state.tick,
                 game.state.terminal.winner if game.state.terminal else None)


async def _dispatch(server: Server, ws: WebSocket, message: dict) -> None:
    mtype = message["type"]
    req_id = message.get("req_id")
    if mtype == "ping":
        await _send(ws, {"type": "pong", "req_id": req_id})
        return
    if mtype == "create":
        await _handle_create(server, ws, message)
        return
    if mtype in ("observe", "spectate", "action"):
        game = server.games.get(message.get("game_id"))
        if game is None:
            raise ProtocolError(f"unknown game_id {message.get('game_id')!r}",
                                code="unknown_game")
        handler = {"observe": _handle_observe, "spectate": _handle_spectate,
                   "action": _handle_action}[mtype]
        await handler(server, game, ws, message)
        return
    # hello/created/state/step_result/pong are server-to-client only
    raise ProtocolError(f"client may not send {mtype!r}", code="bad_direction")


async def _handle_create(server: Server, ws: WebSocket, message: dict) -> None:
    if server.active_games() >= server.max_games:
        raise ProtocolError("server full", code="server_full")
    spec = load_scenario(message.get("scenario", "15x15-2-FFA"))
    controllers = [p.get("controller", "remote") for p in message.get("players", [])]
    if not controllers:
        controllers = ["remote"] * spec.players
    if len(controllers) != spec.players:
        raise ProtocolError(f"scenario wants {spec.players} players, got {len(controllers)}")
    overrides = dict(spec.config_overrides)
    overrides.update(message.get("config") or {})
    config = GameConfig().with_overrides(overrides)
    mode = message.get("mode", "lockstep")
    if mode not in ("lockstep", "realtime"):
        raise ProtocolError(f"unknown mode {mode!r}")
    game = GameSession(spec, config, int(message.get("seed", 0)), controllers, mode,
                       int(message.get("frame_skip", 10)))
    server.games[game.game_id] = game
    log.info("game=%s created scenario=%s mode=%s controllers=%s",
             game.game_id, spec.name, mode, controllers)

    your_player = None
    if game.remote_slots:
        your_player = game.remote_slots[0]
        game.claims[your_player] = ws
    game.subscribers[ws] = "full"

    m = game.state.map
    await _send(ws, {
        "type": "created", "req_id": message.get("req_id"),
        "game_id": game.game_id, "scenario": spec.name, "mode": mode,
        "your_player": your_player,
        "controllers": controllers,
        "map": {"width": m.width, "height": m.height, "text": m.to_text()},
    })
    await _send(ws, game.state_payload())

    if mode == "realtime" or not game.remote_slots:
        game.ticker = asyncio.create_task(_run_ticker(game))


async def _handle_observe(server: Server, game: GameSession, ws: WebSocket,
                          message: dict) -> None:
    player = message.get("player")
    if player is not None:
        player = int(player)
        if player not in game.claims:
            raise ProtocolError(f"player {player} is not a remote slot")
        if game.claims[player] is not None and game.claims[player] is not ws:
            raise ProtocolError(f"player {player} already claimed", code="slot_taken")
        game.claims[player] = ws
        game.grace_deadline.pop(player, None)
        game.subscribers.setdefault(ws, "full")
        m = game.state.map
        await _send(ws, {"type": "created", "req_id": message.get("req_id"),
                         "game_id": game.game_id, "scenario": game.spec.name,
                         "mode": game.mode, "your_player": player,
                         "controllers": game.controllers,
                         "map": {"width": m.width, "height": m.height,
                                 "text": m.to_text()}})
    payload = state_message(game.game_id, game.state)
    payload["req_id"] = message.get("req_id")
    if message.get("tensor"):
        blob_id = next(game.blob_ids)
        payload["blob_id"] = blob_id
        await _send(ws, payload)
        tensor = raw_tensor(game.state, player=player or 0)
        await ws.send_bytes(encode_blob(blob_id, tensor_to_bytes(tensor)))
        return
    await _send(ws, payload)


async def _handle_spectate(server: Server, game: GameSession, ws: WebSocket,
                           message: dict) -> None:
    game.subscribers[ws] = "diff" if message.get("stream") == "diff" else "full"
    payload = state_message(game.game_id, game.state)
    payload["req_id"] = message.get("req_id")
    await _send(ws, payload)


async def _handle_action(server: Server, game: GameSession, ws: WebSocket,
                         message: dict) -> None:
    if game.done:
        raise ProtocolError("game is done", code="game_done")
    player = int(message.get("player", -1))
    layer = message.get("layer", "primitive")
    validate_action(layer, message.get("action_id", -1))
    if player not in game.claims:
        raise ProtocolError(f"player {player} is not a remote slot")
    if game.claims[player] is not ws:
        raise ProtocolError(f"connection does not control player {player}",
                            code="not_your_slot")
    async with game.lock:
        game.pending[player] = {"layer": layer, "action_id": int(message["action_id"]),
                                "req_id": message.get("req_id")}
        if game.mode == "lockstep" and game.ready():
            acks = game.advance()
            for slot, ack in acks.items():
                conn = game.claims.get(slot)
                if conn is not None:
                    await _send(conn, {"type": "step_result", "game_id": game.game_id,
                                       "tick": game.state.tick, "done": game.done,
                                       "winner": None if game.state.terminal is None
                                       else game.state.terminal.winner, **ack})
            await _broadcast(game)


async def _run_ticker(game: GameSession) -> None:
    period = game.frame_skip / max(1, game.config.ticks_per_second)
    try:
        while not game.done:
            await asyncio.sleep(period)
            async with game.lock:
                if game.done:
                    break
                game.advance(fill_noaction=True)
                await _broadcast(game)
        async with game.lock:
            await _broadcast(game)  # terminal state rebroadcast once
    except asyncio.CancelledError:
        pass


async def _cleanup_connection(server: Server, ws: WebSocket) -> None:
    for game in server.games.values():
        game.subscribers.pop(ws, None)
        for player, conn in list(game.claims.items()):
            if conn is ws:
                game.claims[player] = None
                if game.mode == "realtime" and not game.done:
                    grace = GRACE_SECONDS * game.config.ticks_per_second
                    game.grace_deadline[player] = game.state.tick + grace
                    log.info("game=%s player=%s disconnected; grace until tick %s",
                             game.game_id, player, game.grace_deadline[player])


def serve(bind_address: str | None = None, max_games: int = 64,
          static_dir: str | None = None) -> None:
    """Run the service until interrupted; raises on a busy port.

    The bind address falls back to $GRIDRTS_BIND, then 127.0.0.1:8000.
    """
    import uvicorn

    if bind_address is None:
        bind_address = os.environ.get("GRIDRTS_BIND", "127.0.0.1:8000")
    host, _, port = bind_address.partition(":")
    app = create_app(max_games=max_games, static_dir=static_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="info")


def step_game(server: Server, game_id: str) -> dict:
    """Manual advance of one decision round (testing/ops hook)."""
    game = server.games.get(game_id)
    if game is None:
        raise ProtocolError(f"unknown game_id {game_id!r}", code="unknown_game")
    if game.done:
        return state_message(game.game_id, game.state)
    game.advance(fill_noaction=True)
    return state_message(game.game_id, game.state)
