"""Built-in baseline policies: random play and the rule-based opponent.

Policies are pure functions of (state, player[, rng]); any memory an agent
needs must live in the game state itself, which keeps replays exact.
"""
from __future__ import annotations

from .actions import CompoundAction, PrimitiveAction, legal_actions
from .state import GameState

# Economy thresholds for the rule-based policy.  Tuned against the baseline
# win-rate gates, then frozen.
RULE_TOWN_HALLS = 1
RULE_FARMS = 2
RULE_WORKERS = 3
RULE_GOLD_BANK = 500
RULE_ARMY_SIZE = 3
MILITARY_PHASE_SECONDS = 600


def random_agent(state: GameState, player: int, rng) -> PrimitiveAction:
    """Uniform sample from the currently legal primitive actions."""
    acts = sorted(legal_actions(state, player))
    return acts[rng.randrange(len(acts))]


def noop_agent(state: GameState, player: int, rng=None) -> PrimitiveAction:
    return PrimitiveAction.NO_ACTION


def rule_based_agent(state: GameState, player: int, rng=None):
    """Deterministic priority policy.

    Order: secure a town hall, run the economy (workers, farms, a gold
    bank), expand toward the opponent, then -- once the military phase
    clock passes 600 in-game seconds -- raise barracks and footmen and hunt.
    Returns a PrimitiveAction or a CompoundAction.
    """
    p = state.players[player]
    bag = p.resources
    roster = state.roster

    halls = []
    farms = []
    barracks = []
    workers = []
    footmen = 0
    for e in state.entities.values():
        if e.owner != player:
            continue
        name = e.archetype.name
        if name == "TownHall":
            halls.append(e)
        elif name == "Farm":
            farms.append(e)
        elif name == "Barracks":
            barracks.append(e)
        elif name == "Worker":
            workers.append(e)
        elif e.archetype.attack_damage > 0:
            footmen += 1

    def afford(arche):
        return bag.gold >= arche.gold_cost and bag.lumber >= arche.lumber_cost

    # (1) a base needs a town hall
    if len(halls) < RULE_TOWN_HALLS:
        if workers and afford(roster["TownHall"]):
            return CompoundAction.BUILD_TOWN_HALL
        return CompoundAction.HARVEST_NEAREST_RESOURCE

    military_time = state.tick >= MILITARY_PHASE_SECONDS * state.config.ticks_per_second

    if military_time:
        # (4) military: barracks, footmen, then sustained attack
        if not barracks:
            if afford(roster["Barracks"]):
                return CompoundAction.TRAIN_OR_BUILD_ARMY
            return CompoundAction.HARVEST_NEAREST_RESOURCE
        footman = roster["Footman"]
        if footmen < RULE_ARMY_SIZE and afford(footman) \
                and bag.food_used + footman.food_cost <= bag.food_cap \
                and bag.unit_count < state.config.unit_limit:
            return CompoundAction.TRAIN_OR_BUILD_ARMY
        if footmen > 0:
            return CompoundAction.ATTACK_NEAREST_ENEMY
        return CompoundAction.HARVEST_NEAREST_RESOURCE

    # (2) economy
    worker_arche = roster["Worker"]
    if len(workers) < RULE_WORKERS and halls and afford(worker_arche) \
            and bag.food_used + worker_arche.food_cost <= bag.food_cap \
            and bag.unit_count < state.config.unit_limit:
        # steer the selection onto the hall, then train
        if p.selected_entity == halls[0].id:
            return PrimitiveAction.BUILD_0
        return PrimitiveAction.NEXT_UNIT
    if len(farms) < RULE_FARMS:
        if afford(roster["Farm"]):
            return CompoundAction.EXPAND_TOWARD_OPPONENT
        return CompoundAction.HARVEST_NEAREST_RESOURCE
    if bag.gold < RULE_GOLD_BANK or bag.lumber < roster["Barracks"].lumber_cost:
        return CompoundAction.HARVEST_NEAREST_RESOURCE
    # (3) economy satisfied: keep expanding toward the opponent
    return CompoundAction.EXPAND_TOWARD_OPPONENT


AGENT_REGISTRY = {
    "random": random_agent,
    "rule_based": rule_based_agent,
    "noop": noop_agent,
}


def make_agent(name: str):
    try:
        return AGENT_REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown agent {name!r} (known: {sorted(AGENT_REGISTRY)})") from None
