// Game session state machine, DOM-free so the UI contract is testable
// against a scripted fixture server.
//
// The session never simulates: every rendered datum originates from the
// latest authoritative state message.

import {
  ActionLayer, ClientMessage, CreatedMessage, HelloMessage, ParsedMap,
  PROTOCOL_VERSION, ServerMessage, StateMessage, StepResultMessage,
  decodeServerMessage, parseMapText, validateClientMessage,
} from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
}

export type SessionPhase = "connecting" | "lobby" | "in_game" | "done" | "failed";

export interface SessionEvents {
  onPhase?(phase: SessionPhase): void;
  onLobby?(hello: HelloMessage): void;
  onState?(state: StateMessage): void;
  onStepResult?(result: StepResultMessage): void;
  onError?(code: string, message: string): void;
}

export class Session {
  phase: SessionPhase = "connecting";
  hello: HelloMessage | null = null;
  gameId: string | null = null;
  yourPlayer: number | null = null;
  map: ParsedMap | null = null;
  state: StateMessage | null = null;
  lastError: string | null = null;

  private socket: SocketLike | null = null;
  private reqCounter = 0;
  private events: SessionEvents;

  constructor(events: SessionEvents = {}) {
    this.events = events;
  }

  attach(socket: SocketLike): void {
    this.socket = socket;
    this.setPhase("connecting");
  }

  /** Feed one raw server frame into the session. */
  handleRaw(raw: string): void {
    let msg: ServerMessage;
    try {
      msg = decodeServerMessage(raw);
    } catch (err) {
      this.events.onError?.("bad_frame", String(err));
      return;
    }
    this.handle(msg);
  }

  handle(msg: ServerMessage): void {
    switch (msg.type) {
      case "hello": {
        if (msg.protocol_version !== PROTOCOL_VERSION) {
          this.lastError = `server speaks protocol v${msg.protocol_version}, ` +
            `client expects v${PROTOCOL_VERSION}`;
          this.setPhase("failed");
          this.events.onError?.("version_mismatch", this.lastError);
          return;
        }
        this.hello = msg;
        this.setPhase("lobby");
        this.events.onLobby?.(msg);
        return;
      }
      case "created": {
        const created = msg as CreatedMessage;
        this.gameId = created.game_id;
        this.yourPlayer = created.your_player;
        this.map = parseMapText(created.map.text, created.map.width,
                                created.map.height);
        this.setPhase("in_game");
        return;
      }
      case "state": {
        const state = msg as StateMessage;
        if (this.gameId !== null && state.game_id !== this.gameId) return;
        this.state = state;
        this.events.onState?.(state);
        if (state.done) this.setPhase("done");
        return;
      }
      case "step_result":
        this.events.onStepResult?.(msg as StepResultMessage);
        if ((msg as StepResultMessage).done) this.setPhase("done");
        return;
      case "error":
        this.lastError = msg.message;
        this.events.onError?.(msg.code, msg.message);
        return;
      case "pong":
        return;
    }
  }

  // -- outbound -------------------------------------------------------------

  private send(msg: ClientMessage): void {
    validateClientMessage(msg);
    if (!this.socket) throw new Error("no socket attached");
    this.socket.send(JSON.stringify(msg));
  }

  private nextReq(prefix: string): string {
    return `${prefix}-${++this.reqCounter}`;
  }

  create(scenario: string, opts: { seed?: number; mode?: string;
         config?: Record<string, unknown>; controllers?: string[] } = {}): void {
    const players = (opts.controllers ?? ["remote", "rule_based"])
      .map((controller) => ({ controller }));
    this.send({
      type: "create", req_id: this.nextReq("c"), scenario,
      seed: opts.seed ?? Math.floor(Math.random() * 2 ** 31),
      mode: opts.mode ?? "realtime", config: opts.config ?? {}, players,
    });
  }

  joinAs(gameId: string, player: number): void {
    this.send({ type: "observe", req_id: this.nextReq("j"), game_id: gameId, player });
  }

  spectate(gameId: string): void {
    this.send({ type: "spectate", req_id: this.nextReq("s"), game_id: gameId });
  }

  ping(): void {
    this.send({ type: "ping", req_id: this.nextReq("p") });
  }

  /** Issue one action for the local player; no-op while spectating/done. */
  sendAction(layer: ActionLayer, actionId: number): boolean {
    if (this.phase !== "in_game" || this.yourPlayer === null || !this.gameId)
      return false;
    this.send({
      type: "action", req_id: this.nextReq("a"), game_id: this.gameId,
      player: this.yourPlayer, layer, action_id: actionId,
    });
    return true;
  }

  /** The entity id the server says we have selected, if any. */
  selectedEntity(): number | null {
    if (!this.state || this.yourPlayer === null) return null;
    return this.state.players[this.yourPlayer]?.selected ?? null;
  }

  private setPhase(phase: SessionPhase): void {
    if (this.phase === phase) return;
    this.phase = phase;
    this.events.onPhase?.(phase);
  }
}
