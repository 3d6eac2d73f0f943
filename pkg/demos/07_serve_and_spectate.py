"""Spin up the game service in-process and watch a bot match over the wire.

Run: python demos/07_serve_and_spectate.py
(For a real deployment use: gridrts serve --bind 0.0.0.0:8000 --web frontend/dist)
"""
from fastapi.testclient import TestClient

from gridrts.server import create_app

app = create_app()
with TestClient(app) as client:
    print("health:", client.get("/healthz").json())
    with client.websocket_connect("/ws") as ws:
        hello = ws.receive_json()
        print(f"hello: protocol v{hello['protocol_version']}, "
              f"{len(hello['scenarios'])} scenarios, "
              f"{len(hello['actions']['primitive'])}+{len(hello['actions']['compound'])} actions")

        ws.send_json({"type": "create", "req_id": "demo", "scenario": "10x10-2-FFA",
                      "seed": 3, "mode": "realtime",
                      "config": {"ticks_per_second": 500, "tick_limit": 600,
                                 "auto_attack": True, "engage_on_sight": True},
                      "players": [{"controller": "rule_based"},
                                  {"controller": "random"}]})
        created = ws.receive_json()
        print(f"created {created['game_id']}: "
              f"{created['controllers']} on a "
              f"{created['map']['width']}x{created['map']['height']} map")

        frames = 0
        while True:
            msg = ws.receive_json()
            if msg["type"] != "state":
                continue
            frames += 1
            if frames % 10 == 0:
                p0, p1 = msg["players"]
                print(f"  tick {msg['tick']:>4}: entities={len(msg['entities'])} "
                      f"gold={p0['gold']}/{p1['gold']} score={p0['score']}/{p1['score']}")
            if msg["done"]:
                print(f"done at tick {msg['tick']}, winner: {msg['winner']}")
                break

        transcript = client.get(f"/games/{created['game_id']}/transcript").json()
        print(f"transcript: {len(transcript['actions'])} actions, "
              f"{len(transcript['checkpoints'])} checkpoints "
              f"(GET /games/{created['game_id']}/transcript)")
