"""Jump point search against the breadth-first oracle on a random maze.

Run: python demos/02_pathfinding.py
"""
import random

from gridrts import PathQuery, find_path_bfs, find_path_jps

W = H = 24
rng = random.Random(4)
grid = [["." if rng.random() > 0.28 else "#" for _ in range(W)] for _ in range(H)]
grid[0][0] = grid[H - 1][W - 2] = "."
walk = lambda x, y: 0 <= x < W and 0 <= y < H and grid[y][x] == "."

q = PathQuery(walk, W, H, (0, 0), (W - 2, H - 1))
cj, cb = {}, {}
pj = find_path_jps(q, cj)
pb = find_path_bfs(q, cb)

if pj is None:
    print("goal walled off on this seed; try another")
else:
    overlay = [row[:] for row in grid]
    for x, y in pj:
        overlay[y][x] = "*"
    overlay[0][0] = "S"
    overlay[H - 1][W - 2] = "G"
    print("\n".join("".join(r) for r in overlay))
    print(f"\nJPS path length  : {len(pj)} steps ({cj['expanded']} node expansions)")
    print(f"BFS oracle length: {len(pb)} steps ({cb['expanded']} node expansions)")
    print("lengths agree" if len(pj) == len(pb) else "MISMATCH (file a bug!)")
