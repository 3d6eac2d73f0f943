"""Tile grid: terrain, harvestable resources, occupancy, and the map file format.

Map files are plain text, one character per tile:

    .   grass (walkable)
    ~   water
    #   wall
    G   gold deposit      L   lumber      O   oil
    0-5 player spawn point (grass underneath)

Resource deposit sizes live in a sidecar ``<name>.amounts`` file with one
``SYMBOL amount`` pair per line; symbols without an entry default to 1000.

Coordinates are (x, y) with x the column and y the row, y growing downward.
Tiles bearing a non-empty resource deposit are not walkable; once mined out
they revert to plain grass.
"""
from __future__ import annotations

import os
from typing import Callable, NamedTuple

GRASS, WATER, WALL = 0, 1, 2
TERRAIN_NAMES = {GRASS: "grass", WATER: "water", WALL: "wall"}

RES_NONE, RES_GOLD, RES_LUMBER, RES_OIL = 0, 1, 2, 3
RESOURCE_NAMES = {RES_GOLD: "gold", RES_LUMBER: "lumber", RES_OIL: "oil"}
RESOURCE_SYMBOLS = {"G": RES_GOLD, "L": RES_LUMBER, "O": RES_OIL}
DEFAULT_AMOUNT = 1000

# 8-neighbourhood in the engine's canonical scan order (matches the move
# action encoding: U, D, L, R, UL, UR, DL, DR).
DIRS8 = ((0, -1), (0, 1), (-1, 0), (1, 0), (-1, -1), (1, -1), (-1, 1), (1, 1))


def chebyshev(x0: int, y0: int, x1: int, y1: int) -> int:
    return max(abs(x0 - x1), abs(y0 - y1))


class Tile(NamedTuple):
    """Read-only view of one tile, for inspection and tests."""
    terrain: str
    resource: tuple[str, int] | None
    occupant: int | None


class MapError(ValueError):
    pass


class TileMap:
    """Row-major grid held as flat parallel lists for fast scalar access.

    ``blocked`` is the static pathfinding view (terrain, live resource
    deposits, building footprints); ``occupant`` additionally tracks the
    entity standing on each tile.
    """

    __slots__ = ("width", "height", "terrain", "res_kind", "res_amount",
                 "occupant", "blocked", "spawns")

    def __init__(self, width: int, height: int):
        if width <= 0 or height <= 0:
            raise MapError(f"bad map dimensions {width}x{height}")
        n = width * height
        self.width = width
        self.height = height
        self.terrain = [GRASS] * n
        self.res_kind = [RES_NONE] * n
        self.res_amount = [0] * n
        self.occupant = [-1] * n
        self.blocked = [False] * n
        self.spawns: list[tuple[int, int]] = []  # spawns[player] = (x, y)

    # -- indexing ----------------------------------------------------------

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def walkable(self, x: int, y: int) -> bool:
        """Statically passable (ignores units; used by pathfinding)."""
        return (0 <= x < self.width and 0 <= y < self.height
                and not self.blocked[y * self.width + x])

    def free(self, x: int, y: int) -> bool:
        """Passable right now: statically walkable and unoccupied."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            return False
        i = y * self.width + x
        return not self.blocked[i] and self.occupant[i] < 0

    def tile(self, x: int, y: int) -> Tile:
        if not self.in_bounds(x, y):
            raise MapError(f"tile ({x},{y}) out of bounds")
        i = self.index(x, y)
        res = None
        if self.res_kind[i] != RES_NONE and self.res_amount[i] > 0:
            res = (RESOURCE_NAMES[self.res_kind[i]], self.res_amount[i])
        occ = self.occupant[i] if self.occupant[i] >= 0 else None
        return Tile(TERRAIN_NAMES[self.terrain[i]], res, occ)

    # -- mutation ----------------------------------------------------------

    def set_resource(self, x: int, y: int, kind: int, amount: int) -> None:
        if amount < 0:
            raise MapError("resource amount must be >= 0")
        i = self.index(x, y)
        if self.terrain[i] != GRASS:
            raise MapError(f"resource on non-grass tile ({x},{y})")
        self.res_kind[i] = kind
        self.res_amount[i] = amount
        self.blocked[i] = amount > 0

    def deplete(self, i: int, taken: int) -> None:
        """Remove ``taken`` from the deposit at flat index ``i``."""
        left = self.res_amount[i] - taken
        self.res_amount[i] = left
        if left <= 0:
            self.res_amount[i] = 0
            self.blocked[i] = self.terrain[i] != GRASS

    def resource_tiles(self) -> list[tuple[int, int, int, int]]:
        """All live deposits as (x, y, kind, amount), scan order."""
        out = []
        w = self.width
        for i, amt in enumerate(self.res_amount):
            if amt > 0:
                out.append((i % w, i // w, self.res_kind[i], amt))
        return out

    def walkability(self) -> Callable[[int, int], bool]:
        """Snapshot-free predicate handle for path queries."""
        return self.walkable

    def clone(self) -> "TileMap":
        new = TileMap.__new__(TileMap)
        new.width, new.height = self.width, self.height
        new.terrain = list(self.terrain)
        new.res_kind = list(self.res_kind)
        new.res_amount = list(self.res_amount)
        new.occupant = list(self.occupant)
        new.blocked = list(self.blocked)
        new.spawns = list(self.spawns)
        return new

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        rows = []
        for y in range(self.height):
            row = []
            for x in range(self.width):
                i = self.index(x, y)
                if (x, y) in self.spawns:
                    row.append(str(self.spawns.index((x, y))))
                elif self.res_amount[i] > 0:
                    sym = {v: k for k, v in RESOURCE_SYMBOLS.items()}[self.res_kind[i]]
                    row.append(sym)
                elif self.terrain[i] == WATER:
                    row.append("~")
                elif self.terrain[i] == WALL:
                    row.append("#")
                else:
                    row.append(".")
            rows.append("".join(row))
        return "\n".join(rows) + "\n"


def parse_map_text(text: str, amounts: dict[str, int] | None = None) -> TileMap:
    """Build a TileMap from the character-grid format."""
    lines = [line.rstrip("\n") for line in text.splitlines() if line.strip()]
    if not lines:
        raise MapError("empty map text")
    width = len(lines[0])
    height = len(lines)
    if any(len(line) != width for line in lines):
        raise MapError("ragged map: all rows must have equal width")
    amounts = amounts or {}

    tm = TileMap(width, height)
    spawn_at: dict[int, tuple[int, int]] = {}
    for y, line in enumerate(lines):
        for x, ch in enumerate(line):
            i = tm.index(x, y)
            if ch == ".":
                continue
            elif ch == "~":
                tm.terrain[i] = WATER
                tm.blocked[i] = True
            elif ch == "#":
                tm.terrain[i] = WALL
                tm.blocked[i] = True
            elif ch in RESOURCE_SYMBOLS:
                amt = amounts.get(ch, DEFAULT_AMOUNT)
                tm.set_resource(x, y, RESOURCE_SYMBOLS[ch], amt)
            elif ch.isdigit():
                idx = int(ch)
                if idx > 5:
                    raise MapError(f"spawn index {idx} > 5 at ({x},{y})")
                if idx in spawn_at:
                    raise MapError(f"duplicate spawn {idx} at ({x},{y})")
                spawn_at[idx] = (x, y)
            else:
                raise MapError(f"unknown map character {ch!r} at ({x},{y})")

    if spawn_at:
        indices = sorted(spawn_at)
        if indices != list(range(len(indices))):
            raise MapError(f"spawn indices not contiguous from 0: {indices}")
        tm.spawns = [spawn_at[i] for i in indices]
    return tm


def parse_amounts_text(text: str) -> dict[str, int]:
    amounts = {}
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in RESOURCE_SYMBOLS:
            raise MapError(f"bad amounts line {ln}: {line!r}")
        amounts[parts[0]] = int(parts[1])
    return amounts


def load_map(path: str) -> TileMap:
    """Load ``path`` plus its optional ``.amounts`` sidecar."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    sidecar = os.path.splitext(path)[0] + ".amounts"
    amounts = None
    if os.path.exists(sidecar):
        with open(sidecar, encoding="utf-8") as fh:
            amounts = parse_amounts_text(fh.read())
    return parse_map_text(text, amounts)
