"""Raw game-state encodings: the HxWx6 tensor, grayscale and RGB rasters.

Tensor channel layout (version 1, also announced in the protocol hello):

    0  terrain id (0 grass, 1 water, 2 wall)
    1  resource amount as a fraction of 10^6
    2  owner (-1 when no entity)
    3  archetype id (-1 when no entity)
    4  hp fraction in [0, 1] (0 when no entity)
    5  entity-state id (-1 when no entity)

With fog enabled, tiles outside the union of the player's entities' vision
radii carry the sentinel -1 in every channel.  All encoders are pure
functions of the state and safe to call from observer threads on a
snapshot.
"""
from __future__ import annotations

import struct

import numpy as np

from .state import GameState

CHANNELS = 6
FOG_SENTINEL = -1.0
RESOURCE_NORM = 1e6

CHANNEL_LAYOUT = ["terrain", "resource_fraction", "owner", "archetype",
                  "hp_fraction", "entity_state"]

# Fixed luminance table for the grayscale raster.
_TERRAIN_LUM = (70, 35, 15)          # grass, water, wall
_RESOURCE_LUM = {1: 150, 2: 110, 3: 95}
_ARCHETYPE_LUM_BASE = 170            # + 14 per archetype id
_OWNER_LUM_STEP = 6
_FOG_LUM = 0

# Fixed palettes for the RGB raster.
_TERRAIN_RGB = ((58, 121, 39), (38, 88, 160), (84, 84, 84))
_RESOURCE_RGB = {1: (212, 175, 55), 2: (121, 85, 43), 3: (45, 45, 45)}
_PLAYER_RGB = ((214, 58, 58), (58, 92, 214), (58, 178, 160),
               (150, 58, 190), (230, 150, 40), (214, 58, 150))
_FOG_RGB = (12, 12, 12)


def visibility_mask(state: GameState, player: int) -> np.ndarray:
    """Boolean (H, W) array of tiles any friendly entity can see."""
    m = state.map
    mask = np.zeros((m.height, m.width), dtype=bool)
    for e in state.entities.values():
        if e.owner != player:
            continue
        r = e.archetype.vision_radius
        x0, x1 = max(0, e.x - r), min(m.width, e.x + r + 1)
        y0, y1 = max(0, e.y - r), min(m.height, e.y + r + 1)
        mask[y0:y1, x0:x1] = True
    return mask


def raw_tensor(state: GameState, player: int = 0, fog: bool | None = None) -> np.ndarray:
    """The (H, W, 6) float32 encoding for ``player``.

    ``fog=None`` follows the game config's fog_of_war flag.
    """
    m = state.map
    h, w = m.height, m.width
    t = np.zeros((h, w, CHANNELS), dtype=np.float32)
    t[:, :, 0] = np.asarray(m.terrain, dtype=np.float32).reshape(h, w)
    t[:, :, 1] = np.asarray(m.res_amount, dtype=np.float32).reshape(h, w) / RESOURCE_NORM
    t[:, :, 2] = -1.0
    t[:, :, 3] = -1.0
    t[:, :, 5] = -1.0
    for e in state.entities.values():
        t[e.y, e.x, 2] = e.owner
        t[e.y, e.x, 3] = e.archetype.id
        t[e.y, e.x, 4] = e.hp / e.archetype.max_hp
        t[e.y, e.x, 5] = int(e.state)

    if fog is None:
        fog = state.config.fog_of_war
    if fog:
        t[~visibility_mask(state, player)] = FOG_SENTINEL
    return t


def grayscale_image(state: GameState, scale: int = 1, player: int = 0,
                    fog: bool | None = None) -> np.ndarray:
    """(H*scale, W*scale) uint8 raster with a fixed luminance lookup."""
    if scale < 1:
        raise ValueError("scale must be >= 1")
    m = state.map
    h, w = m.height, m.width
    lum = np.empty((h, w), dtype=np.uint8)
    terrain = np.asarray(m.terrain).reshape(h, w)
    for tid, value in enumerate(_TERRAIN_LUM):
        lum[terrain == tid] = value
    res = np.asarray(m.res_amount).reshape(h, w)
    kind = np.asarray(m.res_kind).reshape(h, w)
    for k, value in _RESOURCE_LUM.items():
        lum[(kind == k) & (res > 0)] = value
    for e in state.entities.values():
        lum[e.y, e.x] = min(255, _ARCHETYPE_LUM_BASE + 14 * e.archetype.id
                            + _OWNER_LUM_STEP * e.owner)

    if fog is None:
        fog = state.config.fog_of_war
    if fog:
        lum[~visibility_mask(state, player)] = _FOG_LUM
    if scale > 1:
        lum = np.repeat(np.repeat(lum, scale, axis=0), scale, axis=1)
    return lum


def render_rgb(state: GameState, scale: int = 1, player: int = 0,
               fog: bool | None = None) -> np.ndarray:
    """(H*scale, W*scale, 3) uint8 raster; feeds the spectate stream."""
    if scale < 1:
        raise ValueError("scale must be >= 1")
    m = state.map
    h, w = m.height, m.width
    img = np.empty((h, w, 3), dtype=np.uint8)
    terrain = np.asarray(m.terrain).reshape(h, w)
    for tid, color in enumerate(_TERRAIN_RGB):
        img[terrain == tid] = color
    res = np.asarray(m.res_amount).reshape(h, w)
    kind = np.asarray(m.res_kind).reshape(h, w)
    for k, color in _RESOURCE_RGB.items():
        img[(kind == k) & (res > 0)] = color
    for e in state.entities.values():
        color = _PLAYER_RGB[e.owner % len(_PLAYER_RGB)]
        if not e.archetype.is_unit:
            color = tuple(min(255, c // 2 + 110) for c in color)
        img[e.y, e.x] = color

    if fog is None:
        fog = state.config.fog_of_war
    if fog:
        img[~visibility_mask(state, player)] = _FOG_RGB
    if scale > 1:
        img = np.repeat(np.repeat(img, scale, axis=0), scale, axis=1)
    return img


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------

def tensor_to_bytes(tensor: np.ndarray) -> bytes:
    """Flat little-endian float32 dump prefixed by three int32 dims (H, W, C)."""
    if tensor.ndim != 3:
        raise ValueError("expected a (H, W, C) tensor")
    h, w, c = tensor.shape
    return struct.pack("<3i", h, w, c) + np.ascontiguousarray(tensor, dtype="<f4").tobytes()


def tensor_from_bytes(blob: bytes) -> np.ndarray:
    h, w, c = struct.unpack_from("<3i", blob)
    expected = 12 + h * w * c * 4
    if len(blob) != expected:
        raise ValueError(f"tensor blob size {len(blob)} != {expected}")
    return np.frombuffer(blob, dtype="<f4", offset=12).reshape(h, w, c).copy()


def save_png(image: np.ndarray, path: str) -> None:
    """Debug export of a raster (grayscale or RGB) to a PNG file."""
    from PIL import Image

    Image.fromarray(image).save(path)
