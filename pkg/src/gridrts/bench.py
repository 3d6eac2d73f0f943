"""Throughput benchmarks: updates-per-second across map sizes, unit counts,
and configuration extremes, plus scaling-law fits.

Updates-per-second counts engine ticks, never rendered frames; raster
throughput is a separate measurement.  Each cell runs an isolated game on
an open map whose units are continuously ordered to walk to pseudo-random
targets, so the pathfinding load scales the way real games do.  Warm-up
ticks are excluded from every measurement.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .config import GameConfig
from .engine import _spawn_entity, _start_walk, tick
from .rng import SplitMix64
from .state import GameState
from .tilemap import TileMap
from .units import default_roster

CSV_SCHEMA = "bench.v1"


@dataclass
class BenchSample:
    map_size: int
    units: int          # per player; two players per cell
    config_id: str
    ticks: int
    seconds: float
    ups: float
    note: str = ""

    @property
    def cost_per_tick(self) -> float:
        return self.seconds / self.ticks if self.ticks else math.inf


def minimal_config() -> GameConfig:
    """Cheapest tick: non-durative, pathfinding off."""
    return GameConfig(durative=False, pathfinding_enabled=False,
                      tick_limit=2**31 - 1)


def maximal_config() -> GameConfig:
    """Heaviest tick: durative with pathfinding on."""
    return GameConfig(durative=True, pathfinding_enabled=True,
                      tick_limit=2**31 - 1)


def config_id(config: GameConfig) -> str:
    return (f"pf={'on' if config.pathfinding_enabled else 'off'},"
            f"{'durative' if config.durative else 'instant'}")


def _bench_state(size: int, units_per_player: int, config: GameConfig,
                 seed: int) -> GameState | None:
    # Spawns spread uniformly over the whole map, so interaction between
    # units scales with true density rather than with packed start rows.
    tiles = size * size
    total = 2 * units_per_player
    if total > tiles // 2:
        return None  # units exceed map capacity
    tm = TileMap(size, size)
    state = GameState(config, default_roster(), tm, 2, seed, "bench")
    worker = state.roster["Worker"]
    for k in range(units_per_player):
        for player, phase in ((0, 1), (1, 3)):
            i = ((4 * k + phase) * tiles) // (4 * units_per_player)
            while tm.occupant[i] >= 0:  # collision on tiny maps: next tile
                i = (i + 1) % tiles
            _spawn_entity(state, player, worker, i % size, i // size,
                          construction_ticks=None)
    return state


WANDER_HOPS = 7
ORDER_EVERY = 60  # ticks between command waves


def _drive(state: GameState, rng: SplitMix64) -> None:
    """Issue one command wave: every unit walks to a fresh nearby tile.

    Waves arrive on a fixed cadence, so the path-query rate is exactly
    units / ORDER_EVERY per tick on every map size -- while each open-map
    query scans with the map area.  Blocked steps between waves trigger
    lazy re-path repairs, which is where crowding shows up as extra work.
    """
    size = state.map.width
    top = size - 1
    for e in state.entities.values():
        for _ in range(8):
            # clamped hops keep edge units as busy as interior ones
            gx = min(max(e.x + rng.randint(-WANDER_HOPS, WANDER_HOPS), 0), top)
            gy = min(max(e.y + rng.randint(-WANDER_HOPS, WANDER_HOPS), 0), top)
            if state.map.walkable(gx, gy) and (gx, gy) != (e.x, e.y):
                e.clear_task()
                if _start_walk(state, e, (gx, gy)):
                    break


def _run_cell(state: GameState, duration: float, warmup: float) -> tuple[int, float]:
    rng = SplitMix64(0xBE7C + state.map.width)
    clock = time.perf_counter
    end = clock() + warmup
    while clock() < end:
        if state.tick % ORDER_EVERY == 0:
            _drive(state, rng)
        tick(state)
    ticks0 = state.tick
    start = clock()
    end = start + duration
    now = start
    while now < end:
        for _ in range(32):
            if state.tick % ORDER_EVERY == 0:
                _drive(state, rng)
            tick(state)
        now = clock()
    return state.tick - ticks0, now - start


def run_update_benchmark(map_sizes: list[int], unit_counts: list[int],
                         config: GameConfig, duration: float = 0.4,
                         warmup: float = 0.08, seed: int = 7) -> list[BenchSample]:
    """Tick-throughput grid over map_sizes x unit_counts for one config.

    ``duration`` is the per-cell wall-clock measurement budget (seconds);
    non-positive duration yields an empty table.
    """
    samples: list[BenchSample] = []
    if duration <= 0:
        return samples
    cid = config_id(config)
    for size in map_sizes:
        for units in unit_counts:
            state = _bench_state(size, units, config, seed)
            if state is None:
                samples.append(BenchSample(size, units, cid, 0, 0.0, 0.0,
                                           note="skipped: units exceed map capacity"))
                continue
            ticks, seconds = _run_cell(state, duration, warmup)
            samples.append(BenchSample(size, units, cid, ticks, seconds,
                                       ticks / seconds if seconds else 0.0))
    return samples


def raster_throughput(size: int = 10, scale: int = 1, duration: float = 0.3) -> float:
    """Grayscale frames per second, measured separately from engine ticks."""
    from .observation import grayscale_image

    state = _bench_state(size, 1, minimal_config(), seed=1)
    frames = 0
    clock = time.perf_counter
    start = clock()
    while clock() - start < duration:
        grayscale_image(state, scale)
        frames += 1
    return frames / (clock() - start)


# ---------------------------------------------------------------------------
# Scaling fits
# ---------------------------------------------------------------------------

def linear_fit(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least squares y = a + b*x; returns (a, b, r_squared)."""
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0:
        raise ValueError("degenerate x values")
    b = sxy / sxx
    a = my - b * mx
    ss_tot = sum((y - my) ** 2 for y in ys)
    ss_res = sum((y - (a + b * x)) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return a, b, r2


SUPERLINEAR_SLOPE = 1.05


def fit_scaling(samples: list[BenchSample]) -> dict:
    """Scaling diagnostics from a benchmark table.

    The map fit regresses per-tick cost on tile count at the smallest unit
    count (>= 4 distinct sizes required); the unit classification takes the
    log-log slope of cost vs unit count at the largest map size and labels
    growth linear below a slope of 1.05, superlinear at or above it.
    """
    usable = [s for s in samples if s.ticks > 0]
    if not usable:
        raise ValueError("degenerate table: no measured cells")
    if len({s.config_id for s in usable}) > 1:
        raise ValueError("mixed configurations in one table; fit each separately")

    base_units = min(s.units for s in usable)
    map_rows = sorted((s for s in usable if s.units == base_units),
                      key=lambda s: s.map_size)
    sizes = sorted({s.map_size for s in map_rows})
    if len(sizes) < 4:
        raise ValueError(f"need >= 4 distinct map sizes, got {len(sizes)}")
    xs = [float(s.map_size ** 2) for s in map_rows]
    ys = [s.cost_per_tick for s in map_rows]
    _, slope, map_r2 = linear_fit(xs, ys)

    big = max(s.map_size for s in usable)
    unit_rows = sorted((s for s in usable if s.map_size == big), key=lambda s: s.units)
    counts = sorted({s.units for s in unit_rows})
    result = {"map_slope": slope, "map_slope_r2": map_r2}
    if len(counts) >= 3:
        lx = [math.log(s.units) for s in unit_rows]
        ly = [math.log(s.cost_per_tick) for s in unit_rows]
        _, log_slope, _ = linear_fit(lx, ly)
        result["unit_loglog_slope"] = log_slope
        result["unit_curve_class"] = ("superlinear" if log_slope >= SUPERLINEAR_SLOPE
                                      else "linear")
    return result


# ---------------------------------------------------------------------------
# CSV / plot output
# ---------------------------------------------------------------------------

def write_csv(samples: list[BenchSample], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# schema={CSV_SCHEMA}\n")
        fh.write("map_size,units,config,ticks,seconds,ups\n")
        for s in samples:
            fh.write(f"{s.map_size},{s.units},{s.config_id},{s.ticks},"
                     f"{s.seconds:.6f},{s.ups:.1f}\n")


def write_plot_script(csv_path: str, path: str) -> None:
    """Gnuplot companion for a benchmark CSV."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            "set datafile separator ','\n"
            "set key left\n"
            "set xlabel 'map size'\n"
            "set ylabel 'updates per second'\n"
            "set logscale y\n"
            f"plot '{csv_path}' every ::2 using 1:6 with linespoints title 'ups'\n"
        )
