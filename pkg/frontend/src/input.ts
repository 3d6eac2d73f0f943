// Input mapping: keys and clicks to wire actions.  Pure functions over
// event-like objects; the DOM listeners live in main.ts.

import { EntityState, PA, StateMessage } from "./protocol.js";
import { TILE } from "./renderer.js";

// Arrows + WASD/QEZC diagonals cover the eight move actions.
export const KEY_TO_ACTION: Record<string, number> = {
  ArrowUp: PA.MOVE_UP,
  ArrowDown: PA.MOVE_DOWN,
  ArrowLeft: PA.MOVE_LEFT,
  ArrowRight: PA.MOVE_RIGHT,
  q: PA.MOVE_UP_LEFT,
  e: PA.MOVE_UP_RIGHT,
  z: PA.MOVE_DOWN_LEFT,
  c: PA.MOVE_DOWN_RIGHT,
  a: PA.ATTACK,
  h: PA.HARVEST,
  "1": PA.BUILD_0,
  "2": PA.BUILD_1,
  "3": PA.BUILD_2,
  Tab: PA.NEXT_UNIT,
  " ": PA.NO_ACTION,
};

export function keyToAction(key: string): number | null {
  return KEY_TO_ACTION[key] ?? null;
}

export function canvasToTile(px: number, py: number): { x: number; y: number } {
  return { x: Math.floor(px / TILE), y: Math.floor(py / TILE) };
}

export function entityAt(state: StateMessage, x: number, y: number): EntityState | null {
  for (const e of state.entities) if (e.x === x && e.y === y) return e;
  return null;
}

/** How many NEXT_UNIT presses rotate the selection onto `target`. */
export function selectionPresses(state: StateMessage, player: number,
                                 target: number): number | null {
  const owned = state.entities.filter((e) => e.owner === player)
    .map((e) => e.id).sort((a, b) => a - b);
  const to = owned.indexOf(target);
  if (to < 0) return null;
  const selected = state.players[player]?.selected ?? null;
  let from = selected === null ? 0 : owned.indexOf(selected);
  if (from < 0) from = 0;
  return ((to - from) % owned.length + owned.length) % owned.length;
}

/** Click on one of your entities selects it: the wire has no point-and-click
 *  targeting, so selection is expressed as NEXT_UNIT presses. */
export function clickToSelection(state: StateMessage, player: number,
                                 px: number, py: number): number[] | null {
  const { x, y } = canvasToTile(px, py);
  const hit = entityAt(state, x, y);
  if (!hit || hit.owner !== player) return null;
  const presses = selectionPresses(state, player, hit.id);
  if (presses === null) return null;
  return new Array(presses).fill(PA.NEXT_UNIT);
}
