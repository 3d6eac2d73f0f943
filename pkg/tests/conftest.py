import pytest

from gridrts.config import GameConfig
from gridrts.scenarios import ScenarioSpec
from gridrts.tilemap import TileMap, parse_map_text


def grass_map(width: int, height: int, spawns=()) -> TileMap:
    tm = TileMap(width, height)
    tm.spawns = list(spawns)
    return tm


def map_from_rows(rows, amounts=None) -> TileMap:
    return parse_map_text("\n".join(rows) + "\n", amounts)


def spec_for(tm: TileMap, players: int, objective: str = "last_man_standing",
             episode_ticks=None, name: str = "test", config=None) -> ScenarioSpec:
    spec = ScenarioSpec(name=name, map_path="<in-memory>", players=players,
                        objective=objective, episode_ticks=episode_ticks,
                        config_overrides=dict(config or {}))
    spec._template = tm
    return spec


@pytest.fixture
def default_config():
    return GameConfig()


@pytest.fixture
def tiny_duel():
    """7x7, two workers three tiles apart, a gold deposit near player 0."""
    tm = map_from_rows([
        ".......",
        ".0..1..",
        ".......",
        ".G.....",
        ".......",
        ".......",
        ".......",
    ], amounts={"G": 100})
    return tm
