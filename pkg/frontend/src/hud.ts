// HUD rendering: resources/score readout and the action button strips.

import { CA, COMPOUND_ACTIONS, PA, StateMessage } from "./protocol.js";

export function hudText(state: StateMessage, player: number | null): string {
  const parts = state.players.map((p) => {
    const tag = p.index === player ? "you" : `p${p.index}`;
    const alive = p.alive ? "" : " (out)";
    return `${tag}${alive}: gold ${p.gold} lumber ${p.lumber} oil ${p.oil} ` +
      `food ${p.food_used}/${p.food_cap} units ${p.unit_count} score ${p.score}`;
  });
  return `tick ${state.tick}  |  ${parts.join("  |  ")}`;
}

export interface ButtonSpec {
  label: string;
  layer: "primitive" | "compound";
  actionId: number;
  title: string;
}

export const CONTEXT_BUTTONS: ButtonSpec[] = [
  { label: "Attack", layer: "primitive", actionId: PA.ATTACK, title: "attack adjacent enemy (a)" },
  { label: "Harvest", layer: "primitive", actionId: PA.HARVEST, title: "harvest adjacent deposit (h)" },
  { label: "Build 1", layer: "primitive", actionId: PA.BUILD_0, title: "first build slot (1)" },
  { label: "Build 2", layer: "primitive", actionId: PA.BUILD_1, title: "second build slot (2)" },
  { label: "Build 3", layer: "primitive", actionId: PA.BUILD_2, title: "third build slot (3)" },
  { label: "Next unit", layer: "primitive", actionId: PA.NEXT_UNIT, title: "cycle selection (Tab)" },
];

export const COMPOUND_BUTTONS: ButtonSpec[] = COMPOUND_ACTIONS.map((name) => ({
  label: name.toLowerCase().replace(/_/g, " "),
  layer: "compound",
  actionId: CA[name],
  title: `compound: ${name}`,
}));
