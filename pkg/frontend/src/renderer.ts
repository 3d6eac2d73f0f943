// Canvas tile renderer: flat colours, hp bars, selection ring, fog veil,
// winner overlay.  The 2D context is injected so tests can record calls.

import { EntityState, ParsedMap, StateMessage } from "./protocol.js";

export const TILE = 28;

export const TERRAIN_COLORS: Record<string, string> = {
  grass: "#3a7927",
  water: "#2658a0",
  wall: "#545454",
};

export const RESOURCE_COLORS: Record<string, string> = {
  gold: "#d4af37",
  lumber: "#79552b",
  oil: "#2d2d2d",
};

export const PLAYER_COLORS = [
  "#d63a3a", "#3a5cd6", "#3ab2a0", "#963abe", "#e69628", "#d63a96",
];

export interface Ctx2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: CanvasTextAlign;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
}

export interface RenderOptions {
  selected?: number | null;
  viewer?: number | null;     // fog perspective; null = omniscient
  fog?: boolean;
  visionRadius?: number;
}

export function visibleMask(state: StateMessage, map: ParsedMap, viewer: number,
                            radius: number): boolean[] {
  const mask = new Array(map.width * map.height).fill(false);
  for (const e of state.entities) {
    if (e.owner !== viewer) continue;
    const x0 = Math.max(0, e.x - radius);
    const x1 = Math.min(map.width - 1, e.x + radius);
    const y0 = Math.max(0, e.y - radius);
    const y1 = Math.min(map.height - 1, e.y + radius);
    for (let y = y0; y <= y1; y++)
      for (let x = x0; x <= x1; x++) mask[y * map.width + x] = true;
  }
  return mask;
}

export function renderFrame(ctx: Ctx2D, map: ParsedMap, state: StateMessage,
                            opts: RenderOptions = {}): void {
  const { width, height } = map;
  const fog = opts.fog && opts.viewer !== null && opts.viewer !== undefined;
  const mask = fog
    ? visibleMask(state, map, opts.viewer as number, opts.visionRadius ?? 5)
    : null;

  // terrain + deposits
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const i = y * width + x;
      const res = map.resource[i];
      ctx.fillStyle = res ? RESOURCE_COLORS[res] : TERRAIN_COLORS[map.terrain[i]];
      ctx.fillRect(x * TILE, y * TILE, TILE, TILE);
    }
  }

  // entities, colour-coded by owner; buildings get a lighter fill
  for (const e of state.entities) {
    if (mask && !mask[e.y * width + e.x]) continue;
    const base = PLAYER_COLORS[e.owner % PLAYER_COLORS.length];
    const isBuilding = ["TownHall", "Barracks", "Farm"].includes(e.archetype);
    ctx.fillStyle = isBuilding ? lighten(base) : base;
    const pad = isBuilding ? 2 : 5;
    ctx.fillRect(e.x * TILE + pad, e.y * TILE + pad, TILE - 2 * pad, TILE - 2 * pad);
    drawHpBar(ctx, e);
    if (opts.selected === e.id) {
      ctx.strokeStyle = "#ffffff";
      ctx.lineWidth = 2;
      ctx.strokeRect(e.x * TILE + 1, e.y * TILE + 1, TILE - 2, TILE - 2);
    }
  }

  // fog veil over hidden tiles
  if (mask) {
    ctx.fillStyle = "#0a0a0a";
    ctx.globalAlpha = 0.75;
    for (let y = 0; y < height; y++)
      for (let x = 0; x < width; x++)
        if (!mask[y * width + x]) ctx.fillRect(x * TILE, y * TILE, TILE, TILE);
    ctx.globalAlpha = 1.0;
  }

  if (state.done) drawWinnerOverlay(ctx, map, state);
}

const MAX_HP: Record<string, number> = {
  Worker: 30, Footman: 60, TownHall: 500, Barracks: 300, Farm: 100,
};

function drawHpBar(ctx: Ctx2D, e: EntityState): void {
  const max = MAX_HP[e.archetype] ?? e.hp;
  const frac = Math.max(0, Math.min(1, e.hp / max));
  if (frac >= 1) return; // full health: no bar clutter
  ctx.fillStyle = "#222222";
  ctx.fillRect(e.x * TILE + 3, e.y * TILE + TILE - 5, TILE - 6, 3);
  ctx.fillStyle = frac > 0.5 ? "#4dc34d" : frac > 0.25 ? "#e0b63a" : "#d64040";
  ctx.fillRect(e.x * TILE + 3, e.y * TILE + TILE - 5, (TILE - 6) * frac, 3);
}

function drawWinnerOverlay(ctx: Ctx2D, map: ParsedMap, state: StateMessage): void {
  ctx.fillStyle = "#000000";
  ctx.globalAlpha = 0.55;
  ctx.fillRect(0, 0, map.width * TILE, map.height * TILE);
  ctx.globalAlpha = 1.0;
  ctx.fillStyle = "#ffffff";
  ctx.font = "bold 22px sans-serif";
  ctx.textAlign = "center";
  const text = state.winner === null ? "draw" : `player ${state.winner} wins`;
  ctx.fillText(text, (map.width * TILE) / 2, (map.height * TILE) / 2);
}

function lighten(hex: string): string {
  const n = parseInt(hex.slice(1), 16);
  const ch = (v: number) => Math.min(255, Math.floor(v / 2) + 110);
  const r = ch(n >> 16), g = ch((n >> 8) & 0xff), b = ch(n & 0xff);
  return `#${((r << 16) | (g << 8) | b).toString(16).padStart(6, "0")}`;
}
