import pytest

from gridrts.tilemap import (DEFAULT_AMOUNT, MapError, RES_GOLD, TileMap,
                             chebyshev, parse_amounts_text, parse_map_text)

SAMPLE = """\
.....
.0.G.
.~#..
...1.
.....
"""


def test_parse_sample_map():
    tm = parse_map_text(SAMPLE, {"G": 250})
    assert (tm.width, tm.height) == (5, 5)
    assert tm.spawns == [(1, 1), (3, 3)]
    assert tm.tile(3, 1).resource == ("gold", 250)
    assert tm.tile(1, 2).terrain == "water"
    assert tm.tile(2, 2).terrain == "wall"
    assert not tm.walkable(3, 1)      # live deposits obstruct
    assert not tm.walkable(1, 2) and not tm.walkable(2, 2)
    assert tm.walkable(0, 0) and tm.free(0, 0)


def test_default_amount_without_sidecar():
    tm = parse_map_text(SAMPLE)
    assert tm.tile(3, 1).resource == ("gold", DEFAULT_AMOUNT)


def test_depleted_tile_becomes_walkable():
    tm = parse_map_text(SAMPLE, {"G": 30})
    i = tm.index(3, 1)
    tm.deplete(i, 30)
    assert tm.res_amount[i] == 0
    assert tm.walkable(3, 1)
    assert tm.tile(3, 1).resource is None


@pytest.mark.parametrize("rows,err", [
    (["..", "..."], "ragged"),
    (["..x"], "unknown map character"),
    (["0.0"], "duplicate spawn"),
    (["1.."], "not contiguous"),
    (["6.."], "spawn index 6"),
    ([], "empty"),
])
def test_malformed_maps(rows, err):
    with pytest.raises(MapError, match=err):
        parse_map_text("\n".join(rows) + "\n" if rows else "")


def test_amounts_parsing():
    assert parse_amounts_text("G 100\n# comment\nL 5\n") == {"G": 100, "L": 5}
    with pytest.raises(MapError):
        parse_amounts_text("Q 10\n")


def test_clone_is_independent():
    tm = parse_map_text(SAMPLE)
    cp = tm.clone()
    cp.res_amount[cp.index(3, 1)] = 1
    cp.occupant[0] = 42
    assert tm.res_amount[tm.index(3, 1)] == DEFAULT_AMOUNT
    assert tm.occupant[0] == -1


def test_round_trip_text():
    tm = parse_map_text(SAMPLE)
    assert parse_map_text(tm.to_text()).to_text() == tm.to_text()


def test_resource_tiles_scan_order():
    tm = TileMap(3, 3)
    tm.set_resource(2, 0, RES_GOLD, 5)
    tm.set_resource(0, 2, RES_GOLD, 7)
    assert tm.resource_tiles() == [(2, 0, RES_GOLD, 5), (0, 2, RES_GOLD, 7)]


def test_chebyshev():
    assert chebyshev(0, 0, 3, -4) == 4
    assert chebyshev(2, 2, 2, 2) == 0
