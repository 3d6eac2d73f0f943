"""Grid path-finding: jump point search plus a plain BFS oracle/fallback.

Geometry: 8-connected by default, every step costs 1 (Chebyshev metric,
matching the engine's eight move actions), and diagonal moves only require
the destination tile to be walkable (corner cutting allowed).  Under unit
step costs the symmetry-pruning rules of jump point search still preserve
at least one step-minimal path, so JPS and BFS always agree on path length;
the test suite enforces that equivalence exhaustively.

Returned paths exclude the start tile, include the goal, and are expanded
to per-tile steps.  ``None`` means unreachable.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Callable


@dataclass
class PathQuery:
    walkable: Callable[[int, int], bool]
    width: int
    height: int
    start: tuple[int, int]
    goal: tuple[int, int]
    diagonal: bool = True

    def check_bounds(self) -> None:
        for label, (x, y) in (("from", self.start), ("to", self.goal)):
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"{label} tile ({x},{y}) outside {self.width}x{self.height} map")


_DIRS8 = ((0, -1), (0, 1), (-1, 0), (1, 0), (-1, -1), (1, -1), (-1, 1), (1, 1))
_DIRS4 = ((0, -1), (0, 1), (-1, 0), (1, 0))


def find_path_bfs(q: PathQuery, counters: dict | None = None) -> list[tuple[int, int]] | None:
    """Breadth-first search; the independent length oracle and engine fallback."""
    q.check_bounds()
    return _bfs(q.walkable, q.start, q.goal, q.diagonal, counters)


def find_path_jps(q: PathQuery, counters: dict | None = None) -> list[tuple[int, int]] | None:
    """Jump point search over the same contract as :func:`find_path_bfs`.

    Symmetry pruning needs the diagonal moves; cardinal-only queries fall
    back to the uniform search.
    """
    q.check_bounds()
    if q.diagonal:
        return _jps8(q.walkable, q.start, q.goal, counters)
    return _bfs(q.walkable, q.start, q.goal, False, counters)


# ---------------------------------------------------------------------------
# BFS
# ---------------------------------------------------------------------------

def _bfs(walk, start, goal, diagonal, counters=None):
    if start == goal:
        return []
    if not walk(*goal) or not walk(*start):
        return None
    dirs = _DIRS8 if diagonal else _DIRS4
    parent = {start: None}
    queue = deque((start,))
    expanded = 0
    while queue:
        node = queue.popleft()
        expanded += 1
        x, y = node
        for dx, dy in dirs:
            nxt = (x + dx, y + dy)
            if nxt in parent or not walk(*nxt):
                continue
            parent[nxt] = node
            if nxt == goal:
                if counters is not None:
                    counters["expanded"] = counters.get("expanded", 0) + expanded
                return _rebuild(parent, goal)
            queue.append(nxt)
    if counters is not None:
        counters["expanded"] = counters.get("expanded", 0) + expanded
    return None


def _rebuild(parent, goal):
    path = []
    node = goal
    while parent[node] is not None:
        path.append(node)
        node = parent[node]
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# JPS, 8-connected
# ---------------------------------------------------------------------------

def _jps8(walk, start, goal, counters=None):
    if start == goal:
        return []
    if not walk(*goal) or not walk(*start):
        return None
    gx, gy = goal
    # open heap entries: (f, tiebreak, node); parent_dir drives pruning
    g_score = {start: 0}
    parent: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    parent_dir: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    counter = 0
    h0 = max(abs(start[0] - gx), abs(start[1] - gy))
    open_heap = [(h0, 0, start)]
    closed = set()
    expanded = 0

    while open_heap:
        _, _, node = heapq.heappop(open_heap)
        if node in closed:
            continue
        if node == goal:
            if counters is not None:
                counters["expanded"] = counters.get("expanded", 0) + expanded
            return _expand_jump_path(_rebuild(parent, goal), start)
        closed.add(node)
        expanded += 1
        x, y = node
        ng = g_score[node]

        for dx, dy in _successor_dirs8(walk, x, y, parent_dir[node]):
            jp = _jump8(walk, x, y, dx, dy, gx, gy)
            if jp is None:
                continue
            jx, jy = jp
            njg = ng + max(abs(jx - x), abs(jy - y))
            if jp in g_score and g_score[jp] <= njg:
                continue
            g_score[jp] = njg
            parent[jp] = node
            parent_dir[jp] = (dx, dy)
            counter += 1
            f = njg + max(abs(jx - gx), abs(jy - gy))
            heapq.heappush(open_heap, (f, counter, jp))

    if counters is not None:
        counters["expanded"] = counters.get("expanded", 0) + expanded
    return None


def _successor_dirs8(walk, x, y, d):
    """Pruned direction set for a node reached travelling in direction d."""
    if d is None:
        return [(dx, dy) for dx, dy in _DIRS8 if walk(x + dx, y + dy)]
    dx, dy = d
    dirs = []
    if dx != 0 and dy != 0:
        # natural neighbours of a diagonal move
        if walk(x + dx, y):
            dirs.append((dx, 0))
        if walk(x, y + dy):
            dirs.append((0, dy))
        if walk(x + dx, y + dy):
            dirs.append((dx, dy))
        # forced
        if not walk(x - dx, y) and walk(x - dx, y + dy):
            dirs.append((-dx, dy))
        if not walk(x, y - dy) and walk(x + dx, y - dy):
            dirs.append((dx, -dy))
    elif dx != 0:
        if walk(x + dx, y):
            dirs.append((dx, 0))
        if not walk(x, y - 1) and walk(x + dx, y - 1):
            dirs.append((dx, -1))
        if not walk(x, y + 1) and walk(x + dx, y + 1):
            dirs.append((dx, 1))
    else:
        if walk(x, y + dy):
            dirs.append((0, dy))
        if not walk(x - 1, y) and walk(x - 1, y + dy):
            dirs.append((-1, dy))
        if not walk(x + 1, y) and walk(x + 1, y + dy):
            dirs.append((1, dy))
    return dirs


def _jump8(walk, x, y, dx, dy, gx, gy):
    if dx != 0 and dy != 0:
        while True:
            x += dx
            y += dy
            if not walk(x, y):
                return None
            if x == gx and y == gy:
                return (x, y)
            if (not walk(x - dx, y) and walk(x - dx, y + dy)) or \
               (not walk(x, y - dy) and walk(x + dx, y - dy)):
                return (x, y)
            if _probe_straight(walk, x, y, dx, 0, gx, gy) or \
               _probe_straight(walk, x, y, 0, dy, gx, gy):
                return (x, y)
    else:
        return _probe_straight(walk, x, y, dx, dy, gx, gy)


def _probe_straight(walk, x, y, dx, dy, gx, gy):
    """Scan a cardinal ray; return the jump point or None."""
    if dx != 0:
        while True:
            x += dx
            if not walk(x, y):
                return None
            if x == gx and y == gy:
                return (x, y)
            if (not walk(x, y - 1) and walk(x + dx, y - 1)) or \
               (not walk(x, y + 1) and walk(x + dx, y + 1)):
                return (x, y)
    else:
        while True:
            y += dy
            if not walk(x, y):
                return None
            if x == gx and y == gy:
                return (x, y)
            if (not walk(x - 1, y) and walk(x - 1, y + dy)) or \
               (not walk(x + 1, y) and walk(x + 1, y + dy)):
                return (x, y)


def _expand_jump_path(jump_points, start):
    """Interpolate per-tile steps along the straight rays between jump points."""
    path = []
    px, py = start
    for jx, jy in jump_points:
        sx = (jx > px) - (jx < px)
        sy = (jy > py) - (jy < py)
        while (px, py) != (jx, jy):
            px += sx if px != jx else 0
            py += sy if py != jy else 0
            path.append((px, py))
    return path
