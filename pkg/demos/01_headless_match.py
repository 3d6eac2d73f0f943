"""Watch the rule-based bot beat a random player, headless.

Run: python demos/01_headless_match.py [--seed N]
"""
import argparse

from gridrts import MatchRunner, grayscale_image
from gridrts.match import BASELINE_MATCH_CONFIG, BASELINE_SCENARIO

GLYPHS = {"Worker": "w", "Footman": "F", "TownHall": "H", "Barracks": "B", "Farm": "f"}


def ascii_frame(state):
    m = state.map
    rows = []
    for y in range(m.height):
        row = []
        for x in range(m.width):
            i = m.index(x, y)
            occ = m.occupant[i]
            if occ >= 0 and occ in state.entities:
                e = state.entities[occ]
                ch = GLYPHS.get(e.archetype.name, "?")
                row.append(ch.upper() if e.owner == 0 else ch.lower())
            elif m.res_amount[i] > 0:
                row.append({1: "$", 2: "T", 3: "~"}[m.res_kind[i]])
            elif m.blocked[i]:
                row.append("#")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()

    runner = MatchRunner(BASELINE_SCENARIO, ["rule_based", "random"],
                         config=BASELINE_MATCH_CONFIG)
    # run one episode manually so we can print frames along the way
    from gridrts.engine import new_game, tick
    from gridrts.scenarios import scenario_done

    result, _ = runner.run_episode(args.seed)
    print(f"episode finished: winner=player {result.winner} after {result.ticks} ticks")
    print(f"scores: {result.scores}\n")

    # replay the same seed and show three snapshots
    state = new_game(runner.config, runner.spec, args.seed)
    snap_at = {result.ticks // 3, 2 * result.ticks // 3}
    from gridrts.match import MatchRunner as _MR  # same loop, inline for frames

    runner2 = _MR(BASELINE_SCENARIO, ["rule_based", "random"],
                  config=BASELINE_MATCH_CONFIG)
    res2, transcript = runner2.run_episode(args.seed, record=True)
    from gridrts.replay import Transcript
    from gridrts.actions import PrimitiveAction
    from gridrts.engine import apply_primitive_action

    actions = sorted(transcript.actions)
    ai = 0
    print(ascii_frame(state))
    while state.terminal is None and state.tick < res2.ticks:
        while ai < len(actions) and actions[ai][0] == state.tick:
            _, player, action_id = actions[ai]
            apply_primitive_action(state, player, PrimitiveAction(action_id))
            ai += 1
        tick(state)
        if state.tick in snap_at:
            print(f"\n--- tick {state.tick} ---")
            print(ascii_frame(state))
    print(f"\n--- final, tick {state.tick} ---")
    print(ascii_frame(state))
    print("\nupper-case = rule-based player, lower-case = random player,"
          " $=gold T=lumber #=blocked")


if __name__ == "__main__":
    main()
