"""gridrts: a deterministic, high-throughput tick-based RTS simulator for
reinforcement-learning research.

Quick start::

    from gridrts import Environment, PrimitiveAction

    env = Environment("solo-resources", seed=1)
    obs = env.reset()
    obs, reward, done, info = env.step(PrimitiveAction.MOVE_RIGHT)

See the demos/ directory for narrative walkthroughs of each capability.
"""
from .actions import CompoundAction, PrimitiveAction, expand_compound, legal_actions
from .agents import AGENT_REGISTRY, make_agent, random_agent, rule_based_agent
from .config import GameConfig
from .engine import (apply_primitive_action, evaluate_state_machine, is_terminal,
                     new_game, state_hash, tick)
from .entity import Entity, EntityState, TickTimer
from .env import Environment, StepResult
from .match import MatchRunner
from .observation import grayscale_image, raw_tensor, render_rgb
from .pathfinding import PathQuery, find_path_bfs, find_path_jps
from .replay import Transcript, replay_transcript
from .scenarios import (ScenarioSpec, load_scenario, scenario_done,
                        scenario_names, scenario_reward)
from .state import GameState, Outcome, Player, ResourceBag
from .tilemap import TileMap, load_map, parse_map_text
from .units import Archetype, default_roster

__version__ = "0.1.0"

__all__ = [
    "AGENT_REGISTRY", "Archetype", "CompoundAction", "Entity", "EntityState",
    "Environment", "GameConfig", "GameState", "MatchRunner", "Outcome",
    "PathQuery", "Player", "PrimitiveAction", "ResourceBag", "ScenarioSpec",
    "StepResult", "TickTimer", "TileMap", "Transcript",
    "apply_primitive_action", "default_roster", "evaluate_state_machine",
    "expand_compound", "find_path_bfs", "find_path_jps", "grayscale_image",
    "is_terminal", "legal_actions", "load_map", "load_scenario", "make_agent",
    "new_game", "parse_map_text", "random_agent", "raw_tensor", "render_rgb",
    "replay_transcript", "rule_based_agent", "scenario_done", "scenario_names",
    "scenario_reward", "state_hash", "tick",
]
