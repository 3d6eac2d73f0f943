// Wiring: lobby view, game canvas, inputs, HUD.  All game truth comes from
// the latest state message; this file only moves pixels and events around.

import { clickToSelection, keyToAction } from "./input.js";
import { COMPOUND_BUTTONS, CONTEXT_BUTTONS, hudText } from "./hud.js";
import { HelloMessage, StateMessage } from "./protocol.js";
import { Ctx2D, renderFrame, TILE } from "./renderer.js";
import { Session } from "./session.js";
import { connect, serverUrl } from "./wsClient.js";

const $ = (id: string) => document.getElementById(id) as HTMLElement;

const banner = $("banner");
const lobby = $("lobby");
const gameView = $("game");
const hud = $("hud");
const canvas = $("board") as unknown as HTMLCanvasElement;

let raf = 0;
let dirty = false;

const session = new Session({
  onPhase(phase) {
    banner.textContent = "";
    lobby.style.display = phase === "lobby" ? "block" : "none";
    gameView.style.display = phase === "in_game" || phase === "done" ? "block" : "none";
    if (phase === "failed") showBanner(session.lastError ?? "connection failed", true);
  },
  onLobby(hello) {
    buildLobby(hello);
  },
  onState() {
    dirty = true;
  },
  onStepResult(result) {
    if (result.action_ignored) showBanner("action had no effect", false);
  },
  onError(code, message) {
    if (session.phase === "done") {
      showBanner("game over: input ignored", false);
      return;
    }
    showBanner(`${code}: ${message}`, code === "version_mismatch");
  },
});

function showBanner(text: string, sticky: boolean): void {
  banner.textContent = text;
  banner.className = sticky ? "banner error" : "banner";
  if (!sticky) setTimeout(() => { banner.textContent = ""; }, 2500);
}

function buildLobby(hello: HelloMessage): void {
  const list = $("scenarios");
  list.innerHTML = "";
  for (const s of hello.scenarios) {
    const row = document.createElement("button");
    const ticks = s.episode_ticks === null ? "" : `, ${s.episode_ticks} ticks`;
    row.textContent = `${s.name} — ${s.players} player(s), ` +
      `${s.map_size[0]}x${s.map_size[1]}${ticks}`;
    row.onclick = () => {
      const mode = ($("mode") as HTMLSelectElement).value;
      const opponents = new Array(Math.max(0, s.players - 1)).fill(
        ($("opponent") as HTMLSelectElement).value);
      session.create(s.name, {
        mode,
        controllers: ["remote", ...opponents],
        config: { auto_attack: true },
      });
    };
    list.appendChild(row);
  }
}

function buildButtons(): void {
  const strip = $("buttons");
  for (const spec of [...CONTEXT_BUTTONS, ...COMPOUND_BUTTONS]) {
    const b = document.createElement("button");
    b.textContent = spec.label;
    b.title = spec.title;
    b.className = spec.layer;
    b.onclick = () => session.sendAction(spec.layer, spec.actionId);
    strip.appendChild(b);
  }
}

function draw(): void {
  raf = requestAnimationFrame(draw);
  if (!dirty || !session.map || !session.state) return;
  dirty = false;
  const map = session.map;
  canvas.width = map.width * TILE;
  canvas.height = map.height * TILE;
  const ctx = canvas.getContext("2d") as unknown as Ctx2D;
  renderFrame(ctx, map, session.state as StateMessage, {
    selected: session.selectedEntity(),
    viewer: session.yourPlayer,
    fog: false,
  });
  hud.textContent = hudText(session.state, session.yourPlayer);
}

canvas.addEventListener("click", (ev) => {
  if (!session.state || session.yourPlayer === null) return;
  const rect = canvas.getBoundingClientRect();
  const presses = clickToSelection(session.state, session.yourPlayer,
                                   ev.clientX - rect.left, ev.clientY - rect.top);
  if (presses) for (const id of presses) session.sendAction("primitive", id);
});

window.addEventListener("keydown", (ev) => {
  const action = keyToAction(ev.key);
  if (action !== null && session.phase === "in_game") {
    ev.preventDefault();
    session.sendAction("primitive", action);
  }
});

buildButtons();
connect(serverUrl(), session, {
  onOpen: () => showBanner("connected", false),
  onClose: (retry) => showBanner(retry ? "connection lost, retrying..." : "disconnected",
                                 !retry),
});
raf = requestAnimationFrame(draw);
void raf;
