"""State encodings: the HxWx6 tensor, fog-of-war, and raster exports.

Run: python demos/03_observations.py   (writes frame PNGs to ./out/)
"""
import os

import numpy as np

from gridrts import GameConfig, grayscale_image, load_scenario, new_game, raw_tensor, render_rgb
from gridrts.observation import CHANNEL_LAYOUT, save_png, tensor_to_bytes

state = new_game(GameConfig(), load_scenario("15x15-2-FFA"), seed=2)

tensor = raw_tensor(state, player=0)
print(f"tensor shape {tensor.shape}, channels: {CHANNEL_LAYOUT}")
worker = state.entities[1]
print(f"worker tile ({worker.x},{worker.y}) encodes:",
      {k: float(v) for k, v in zip(CHANNEL_LAYOUT, tensor[worker.y, worker.x])})

fogged = raw_tensor(state, player=0, fog=True)
hidden = int((fogged[:, :, 0] == -1).sum())
print(f"with fog on, {hidden} of {15 * 15} tiles are masked to the -1 sentinel")

blob = tensor_to_bytes(tensor)
print(f"wire export: {len(blob)} bytes (three int32 dims + float32 payload)")

os.makedirs("out", exist_ok=True)
save_png(grayscale_image(state, scale=16), "out/frame_gray.png")
save_png(render_rgb(state, scale=16), "out/frame_rgb.png")
save_png(render_rgb(state, scale=16, fog=True), "out/frame_rgb_fog.png")
print("wrote out/frame_gray.png, out/frame_rgb.png, out/frame_rgb_fog.png")
