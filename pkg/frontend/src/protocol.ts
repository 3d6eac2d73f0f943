// Wire protocol v1: message shapes, action tables, and outbound validation.
// Field-by-field reference lives in docs/protocol.md on the server side.

export const PROTOCOL_VERSION = 1;

export const PRIMITIVE_ACTIONS = [
  "MOVE_UP", "MOVE_DOWN", "MOVE_LEFT", "MOVE_RIGHT",
  "MOVE_UP_LEFT", "MOVE_UP_RIGHT", "MOVE_DOWN_LEFT", "MOVE_DOWN_RIGHT",
  "ATTACK", "HARVEST", "BUILD_0", "BUILD_1", "BUILD_2",
  "NEXT_UNIT", "PREV_UNIT", "NO_ACTION",
] as const;

export const COMPOUND_ACTIONS = [
  "HARVEST_NEAREST_RESOURCE", "ATTACK_NEAREST_ENEMY", "BUILD_TOWN_HALL",
  "BUILD_BARRACKS", "TRAIN_OR_BUILD_ARMY", "EXPAND_TOWARD_OPPONENT",
] as const;

export const PA = Object.fromEntries(
  PRIMITIVE_ACTIONS.map((name, id) => [name, id]),
) as Record<(typeof PRIMITIVE_ACTIONS)[number], number>;

export const CA = Object.fromEntries(
  COMPOUND_ACTIONS.map((name, id) => [name, id]),
) as Record<(typeof COMPOUND_ACTIONS)[number], number>;

export interface ScenarioInfo {
  name: string;
  players: number;
  map_size: [number, number];
  episode_ticks: number | null;
}

export interface HelloMessage {
  type: "hello";
  protocol_version: number;
  actions: { primitive: string[]; compound: string[] };
  channel_layout: string[];
  scenarios: ScenarioInfo[];
}

export interface CreatedMessage {
  type: "created";
  req_id?: string;
  game_id: string;
  scenario: string;
  mode: string;
  your_player: number | null;
  controllers: string[];
  map: { width: number; height: number; text: string };
}

export interface PlayerState {
  index: number;
  gold: number;
  lumber: number;
  oil: number;
  food_used: number;
  food_cap: number;
  unit_count: number;
  score: number;
  alive: boolean;
  selected: number | null;
}

export interface EntityState {
  id: number;
  owner: number;
  archetype: string;
  x: number;
  y: number;
  hp: number;
  state: string;
}

export interface StateMessage {
  type: "state";
  game_id: string;
  tick: number;
  done: boolean;
  winner: number | null;
  players: PlayerState[];
  entities: EntityState[];
  map_digest: string;
}

export interface StepResultMessage {
  type: "step_result";
  req_id?: string;
  game_id: string;
  tick: number;
  done: boolean;
  winner: number | null;
  action: number;
  action_ignored: boolean;
}

export interface ErrorMessage {
  type: "error";
  code: string;
  message: string;
  req_id?: string;
}

export type ServerMessage =
  | HelloMessage
  | CreatedMessage
  | StateMessage
  | StepResultMessage
  | ErrorMessage
  | { type: "pong"; req_id?: string };

export type ActionLayer = "primitive" | "compound";

export interface ActionMessage {
  type: "action";
  req_id: string;
  game_id: string;
  player: number;
  layer: ActionLayer;
  action_id: number;
}

export type ClientMessage =
  | ActionMessage
  | { type: "create"; req_id: string; scenario: string; seed: number; mode: string;
      config: Record<string, unknown>; players: { controller: string }[] }
  | { type: "observe"; req_id: string; game_id: string; player?: number;
      tensor?: boolean }
  | { type: "spectate"; req_id: string; game_id: string; stream?: "full" | "diff" }
  | { type: "ping"; req_id: string };

/** Validate an outbound message against the protocol contract; the test
 *  suite additionally cross-checks shapes against the committed golden
 *  fixtures shared with the server. Throws on violation. */
export function validateClientMessage(msg: ClientMessage): void {
  if (!msg.req_id) throw new Error(`${msg.type}: req_id is required`);
  switch (msg.type) {
    case "action": {
      if (!msg.game_id) throw new Error("action: game_id is required");
      if (!Number.isInteger(msg.player) || msg.player < 0)
        throw new Error("action: player must be a non-negative integer");
      const arity = msg.layer === "primitive" ? PRIMITIVE_ACTIONS.length
        : msg.layer === "compound" ? COMPOUND_ACTIONS.length : -1;
      if (arity < 0) throw new Error(`action: unknown layer ${msg.layer}`);
      if (!Number.isInteger(msg.action_id) || msg.action_id < 0 || msg.action_id >= arity)
        throw new Error(`action: action_id ${msg.action_id} outside 0..${arity - 1}`);
      break;
    }
    case "create":
      if (!msg.scenario) throw new Error("create: scenario is required");
      if (!Number.isInteger(msg.seed)) throw new Error("create: seed must be an integer");
      if (msg.mode !== "lockstep" && msg.mode !== "realtime")
        throw new Error(`create: unknown mode ${msg.mode}`);
      for (const p of msg.players)
        if (!p.controller) throw new Error("create: player without controller");
      break;
    case "observe":
    case "spectate":
      if (!msg.game_id) throw new Error(`${msg.type}: game_id is required`);
      break;
    case "ping":
      break;
  }
}

export function decodeServerMessage(raw: string): ServerMessage {
  const msg = JSON.parse(raw);
  if (typeof msg !== "object" || msg === null || typeof msg.type !== "string")
    throw new Error("malformed server message");
  return msg as ServerMessage;
}

/** Parse the map-file character grid from `created.map.text`. */
export interface ParsedMap {
  width: number;
  height: number;
  terrain: ("grass" | "water" | "wall")[];
  resource: ("gold" | "lumber" | "oil" | null)[];
}

export function parseMapText(text: string, width: number, height: number): ParsedMap {
  const rows = text.split("\n").filter((r) => r.length > 0);
  const terrain: ParsedMap["terrain"] = new Array(width * height).fill("grass");
  const resource: ParsedMap["resource"] = new Array(width * height).fill(null);
  rows.forEach((row, y) => {
    for (let x = 0; x < row.length; x++) {
      const i = y * width + x;
      const ch = row[x];
      if (ch === "~") terrain[i] = "water";
      else if (ch === "#") terrain[i] = "wall";
      else if (ch === "G") resource[i] = "gold";
      else if (ch === "L") resource[i] = "lumber";
      else if (ch === "O") resource[i] = "oil";
    }
  });
  return { width, height, terrain, resource };
}
