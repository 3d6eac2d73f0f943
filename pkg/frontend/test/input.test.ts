import { describe, expect, it } from "vitest";

import { canvasToTile, clickToSelection, keyToAction, selectionPresses } from "../src/input.js";
import { PA, StateMessage } from "../src/protocol.js";
import { TILE } from "../src/renderer.js";

describe("keyboard mapping", () => {
  it("arrows map to the four cardinal moves", () => {
    expect(keyToAction("ArrowRight")).toBe(PA.MOVE_RIGHT);
    expect(keyToAction("ArrowLeft")).toBe(PA.MOVE_LEFT);
    expect(keyToAction("ArrowUp")).toBe(PA.MOVE_UP);
    expect(keyToAction("ArrowDown")).toBe(PA.MOVE_DOWN);
  });

  it("diagonals, context keys, and unknown keys", () => {
    expect(keyToAction("q")).toBe(PA.MOVE_UP_LEFT);
    expect(keyToAction("c")).toBe(PA.MOVE_DOWN_RIGHT);
    expect(keyToAction("a")).toBe(PA.ATTACK);
    expect(keyToAction("h")).toBe(PA.HARVEST);
    expect(keyToAction("2")).toBe(PA.BUILD_1);
    expect(keyToAction("Tab")).toBe(PA.NEXT_UNIT);
    expect(keyToAction("x")).toBeNull();
  });
});

function twoUnitState(selected: number | null): StateMessage {
  return {
    type: "state", game_id: "g1", tick: 0, done: false, winner: null,
    players: [
      { index: 0, gold: 0, lumber: 0, oil: 0, food_used: 2, food_cap: 5,
        unit_count: 2, score: 0, alive: true, selected },
      { index: 1, gold: 0, lumber: 0, oil: 0, food_used: 1, food_cap: 0,
        unit_count: 1, score: 0, alive: true, selected: 2 },
    ],
    entities: [
      { id: 1, owner: 0, archetype: "Worker", x: 1, y: 1, hp: 30, state: "IDLE" },
      { id: 2, owner: 1, archetype: "Worker", x: 5, y: 5, hp: 30, state: "IDLE" },
      { id: 4, owner: 0, archetype: "Worker", x: 3, y: 1, hp: 30, state: "IDLE" },
    ],
    map_digest: "00",
  };
}

describe("pointer mapping", () => {
  it("converts canvas pixels to tiles", () => {
    expect(canvasToTile(0, 0)).toEqual({ x: 0, y: 0 });
    expect(canvasToTile(TILE * 3 + 5, TILE * 2 + 27)).toEqual({ x: 3, y: 2 });
  });

  it("clicking an own unit yields the NEXT_UNIT presses to select it", () => {
    const state = twoUnitState(1);
    const presses = clickToSelection(state, 0, 3 * TILE + 2, 1 * TILE + 2);
    expect(presses).toEqual([PA.NEXT_UNIT]);
  });

  it("clicking the already-selected unit sends nothing", () => {
    const state = twoUnitState(1);
    expect(clickToSelection(state, 0, 1 * TILE + 2, 1 * TILE + 2)).toEqual([]);
  });

  it("clicking an enemy or empty tile selects nothing", () => {
    const state = twoUnitState(1);
    expect(clickToSelection(state, 0, 5 * TILE + 2, 5 * TILE + 2)).toBeNull();
    expect(clickToSelection(state, 0, 9 * TILE, 9 * TILE)).toBeNull();
  });

  it("wraps selection rotation", () => {
    const state = twoUnitState(4);
    expect(selectionPresses(state, 0, 1)).toBe(1); // 4 -> wrap -> 1
    expect(selectionPresses(state, 0, 4)).toBe(0);
  });
});
