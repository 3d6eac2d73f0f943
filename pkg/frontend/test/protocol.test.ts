// Outbound messages must match the committed golden fixtures shared with
// the server (tests/fixtures/protocol on the Python side).

import { readdirSync, readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  CA, COMPOUND_ACTIONS, PA, PRIMITIVE_ACTIONS, parseMapText,
  validateClientMessage,
} from "../src/protocol.js";

const FIXTURES = join(__dirname, "..", "..", "tests", "fixtures", "protocol");

function fixture(name: string): Record<string, unknown> {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8"));
}

describe("golden fixtures", () => {
  it("exist for all eleven message types", () => {
    const names = readdirSync(FIXTURES).map((f) => f.replace(".json", "")).sort();
    expect(names).toEqual([
      "action", "create", "created", "error", "hello", "observe", "ping",
      "pong", "spectate", "state", "step_result",
    ]);
  });

  it("hello fixture matches the client action tables exactly", () => {
    const hello = fixture("hello") as { actions: { primitive: string[]; compound: string[] } };
    expect(hello.actions.primitive).toEqual([...PRIMITIVE_ACTIONS]);
    expect(hello.actions.compound).toEqual([...COMPOUND_ACTIONS]);
    expect(PA.MOVE_RIGHT).toBe(3);
    expect(PA.NO_ACTION).toBe(15);
    expect(CA.EXPAND_TOWARD_OPPONENT).toBe(5);
  });

  for (const name of ["action", "create", "observe", "spectate", "ping"]) {
    it(`client-built ${name} messages carry the fixture's fields`, () => {
      const golden = fixture(name);
      const built = buildLike(name);
      validateClientMessage(built as never);
      for (const key of Object.keys(golden)) {
        expect(built, `missing field ${key}`).toHaveProperty(key);
        expect(typeof (built as never)[key]).toBe(typeof golden[key]);
      }
    });
  }
});

function buildLike(name: string): Record<string, unknown> {
  switch (name) {
    case "action":
      return { type: "action", req_id: "a-1", game_id: "g1", player: 0,
               layer: "primitive", action_id: PA.MOVE_RIGHT };
    case "create":
      return { type: "create", req_id: "c-1", scenario: "15x15-2-FFA", seed: 1,
               mode: "lockstep", frame_skip: 10, config: {},
               players: [{ controller: "remote" }, { controller: "rule_based" }] };
    case "observe":
      return { type: "observe", req_id: "o-1", game_id: "g1", player: 1,
               tensor: false };
    case "spectate":
      return { type: "spectate", req_id: "s-1", game_id: "g1", stream: "full" };
    default:
      return { type: "ping", req_id: "p-1" };
  }
}

describe("validation", () => {
  it("rejects out-of-range action ids", () => {
    expect(() => validateClientMessage({
      type: "action", req_id: "x", game_id: "g", player: 0,
      layer: "primitive", action_id: 16,
    })).toThrow(/outside 0\.\.15/);
    expect(() => validateClientMessage({
      type: "action", req_id: "x", game_id: "g", player: 0,
      layer: "compound", action_id: 6,
    })).toThrow(/outside 0\.\.5/);
  });

  it("rejects missing req_id and bad layers", () => {
    expect(() => validateClientMessage({
      type: "ping", req_id: "",
    } as never)).toThrow(/req_id/);
    expect(() => validateClientMessage({
      type: "action", req_id: "x", game_id: "g", player: 0,
      layer: "psychic" as never, action_id: 0,
    })).toThrow(/layer/);
  });
});

describe("map text parsing", () => {
  it("decodes terrain and deposits", () => {
    const map = parseMapText("0.G\n~#L\n", 3, 2);
    expect(map.terrain[0]).toBe("grass");    // spawn digit renders as grass
    expect(map.resource[2]).toBe("gold");
    expect(map.terrain[3]).toBe("water");
    expect(map.terrain[4]).toBe("wall");
    expect(map.resource[5]).toBe("lumber");
  });
});
