"""Operator entry point: headless matches, benchmarks, the server, replays.

Exit codes: 0 success, 1 engine/verification error, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from .agents import AGENT_REGISTRY
from .config import parse_config_kv

RUN_SCHEMA = "run.v1"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridrts",
                                     description="deterministic RTS simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run headless matches")
    run.add_argument("--scenario", default="15x15-2-FFA")
    for i in range(6):
        run.add_argument(f"--p{i}", metavar="AGENT", default=None,
                         help=f"agent for player {i} ({', '.join(AGENT_REGISTRY)})")
    run.add_argument("--episodes", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--config", action="append", default=[], metavar="K=V")
    run.add_argument("--frame-skip", type=int, default=10)
    run.add_argument("--out", metavar="CSV", default=None)
    run.add_argument("--record-dir", metavar="DIR", default=None,
                     help="write one transcript file per episode")
    run.add_argument("--workers", type=int, default=1)

    bench = sub.add_parser("bench", help="updates-per-second benchmark")
    bench.add_argument("--maps", default="10,15,21,31")
    bench.add_argument("--units", default="1,4,10,20", help="units per player")
    bench.add_argument("--profile", choices=("minimal", "maximal"), default="maximal")
    bench.add_argument("--config", action="append", default=[], metavar="K=V")
    bench.add_argument("--duration", type=float, default=0.4, help="seconds per cell")
    bench.add_argument("--out", metavar="CSV", default=None)
    bench.add_argument("--plot", metavar="GNUPLOT", default=None)

    serve_p = sub.add_parser("serve", help="run the game service")
    serve_p.add_argument("--bind", default=None,
                         help="host:port (default $GRIDRTS_BIND or 127.0.0.1:8000)")
    serve_p.add_argument("--max-games", type=int, default=64)
    serve_p.add_argument("--web", default=None, help="static web client directory")

    replay_p = sub.add_parser("replay", help="verify a transcript")
    replay_p.add_argument("--transcript", required=True)

    scen = sub.add_parser("scenarios", help="scenario registry")
    scen.add_argument("--list", action="store_true", dest="list_them")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "serve":
            from .server import serve

            serve(args.bind, max_games=args.max_games, static_dir=args.web)
            return 0
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "scenarios":
            return _cmd_scenarios(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def _cmd_run(args) -> int:
    import os

    from .match import MatchRunner
    from .scenarios import load_scenario

    spec = load_scenario(args.scenario)
    agents = []
    for i in range(spec.players):
        name = getattr(args, f"p{i}") or "random"
        agents.append(name)
    config = parse_config_kv(args.config)
    runner = MatchRunner(spec, agents, config=config, frame_skip=args.frame_skip)

    rows = []
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        from .match import run_episode_task

        jobs = [(args.scenario, agents, config, args.frame_skip, args.seed + k, k)
                for k in range(args.episodes)]
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(run_episode_task, jobs))
        rows.sort(key=lambda r: r.episode)
    else:
        for k in range(args.episodes):
            record = args.record_dir is not None
            result, transcript = runner.run_episode(args.seed + k, episode=k,
                                                    record=record)
            if record:
                os.makedirs(args.record_dir, exist_ok=True)
                transcript.save(os.path.join(args.record_dir, f"episode-{k:05d}.json"))
            rows.append(result)

    lines = [f"# schema={RUN_SCHEMA}"]
    score_cols = ",".join(f"score{i}" for i in range(spec.players))
    lines.append(f"episode,seed,winner,ticks,{score_cols}")
    for r in rows:
        winner = "" if r.winner is None else r.winner
        scores = ",".join(str(s) for s in r.scores)
        lines.append(f"{r.episode},{r.seed},{winner},{r.ticks},{scores}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    wins = [sum(1 for r in rows if r.winner == i) for i in range(spec.players)]
    draws = sum(1 for r in rows if r.winner is None)
    print(f"episodes={len(rows)} wins={wins} draws={draws}", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    from . import bench

    maps = [int(x) for x in args.maps.split(",") if x]
    units = [int(x) for x in args.units.split(",") if x]
    config = bench.minimal_config() if args.profile == "minimal" else bench.maximal_config()
    if args.config:
        config = config.with_overrides(parse_config_kv(args.config))
    samples = bench.run_update_benchmark(maps, units, config, duration=args.duration)
    for s in samples:
        note = f"  ({s.note})" if s.note else ""
        print(f"map={s.map_size:>3} units={s.units:>4} {s.config_id}: "
              f"{s.ups:>12.0f} ups{note}")
    try:
        fits = bench.fit_scaling(samples)
        print(f"map fit: R^2={fits['map_slope_r2']:.3f}  "
              f"unit growth: {fits.get('unit_curve_class', 'n/a')} "
              f"(log-log slope {fits.get('unit_loglog_slope', float('nan')):.2f})")
    except ValueError:
        pass
    if args.out:
        bench.write_csv(samples, args.out)
        if args.plot:
            bench.write_plot_script(args.out, args.plot)
    return 0


def _cmd_replay(args) -> int:
    from .replay import Transcript, replay_transcript

    transcript = Transcript.load(args.transcript)
    result = replay_transcript(transcript)
    print(result.message)
    return 0 if result.ok else 1


def _cmd_scenarios(args) -> int:
    from .scenarios import load_scenario, scenario_names

    for name in scenario_names():
        spec = load_scenario(name)
        w, h = spec.map_size
        ticks = spec.episode_ticks if spec.episode_ticks is not None else "-"
        print(f"{name:<16} players={spec.players} map={w}x{h} episode_ticks={ticks}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
