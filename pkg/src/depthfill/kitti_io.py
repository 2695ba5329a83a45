"""Reading/writing 16-bit depth PNGs and colormapped visualizations.

File convention (KITTI depth-completion devkit): single-channel 16-bit PNG,
depth_m = raw / 256, raw 0 means no measurement. Maximum representable depth
is 65535/256 ~ 255.996 m.

Raw values below 26 decode to depths at or below the 0.1 m validity threshold;
they survive a write/read round trip bit-exactly but count as empty pixels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .depth_core import DepthEncoding, DepthMap

DEPTH_SCALE = 256.0  # raw units per meter
MAX_DEPTH_M = 65535 / DEPTH_SCALE

# Fixed zlib level so identical inputs produce byte-identical files.
_PNG_COMPRESS_LEVEL = 6

# Blue -> cyan -> green -> yellow -> red ramp, linearly interpolated. Kept
# built-in (no plotting dependency) and fixed so image-diff tests are stable.
_RAMP_POSITIONS = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
_RAMP_RED = np.array([0.0, 0.0, 0.0, 255.0, 255.0])
_RAMP_GREEN = np.array([0.0, 255.0, 255.0, 255.0, 0.0])
_RAMP_BLUE = np.array([255.0, 255.0, 0.0, 0.0, 0.0])


def read_depth_png(path) -> DepthMap:
    """Decode a 16-bit depth PNG into a direct-encoded DepthMap."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such depth png: {path}")
    with Image.open(path) as img:
        if img.mode not in ("I;16", "I;16B", "I"):
            raise ValueError(
                f"{path}: expected a single-channel 16-bit PNG, got mode {img.mode!r}"
            )
        raw = np.asarray(img)
    if raw.ndim != 2 or raw.size == 0:
        raise ValueError(f"{path}: bad image dimensions {raw.shape}")
    if raw.dtype != np.uint16:
        if raw.min() < 0 or raw.max() > 65535:
            raise ValueError(f"{path}: sample values exceed 16-bit range")
        raw = raw.astype(np.uint16)
    values = raw.astype(np.float32) / np.float32(DEPTH_SCALE)
    return DepthMap._wrap(values, DepthEncoding.DIRECT)


def write_depth_png(depth_map: DepthMap, path) -> None:
    """Encode a direct-encoded map as a 16-bit PNG (raw = round(depth * 256))."""
    if depth_map.encoding is not DepthEncoding.DIRECT:
        raise ValueError("write_depth_png expects a direct-encoded map")
    values = depth_map.values
    if (values >= 256.0).any():
        raise ValueError("depth values must be < 256 m to be encodable")
    raw = np.rint(values.astype(np.float64) * DEPTH_SCALE)
    raw = np.clip(raw, 0, 65535).astype(np.uint16)
    _save_png(Image.fromarray(raw), path)


def write_colormap_png(grid, path, range_min: float, range_max: float) -> None:
    """Render a value grid as an 8-bit RGB PNG on the blue->red ramp.

    Values map linearly from range_min (blue) to range_max (red), clipped.
    Pixels that are exactly 0 (empty / no data) render black.
    """
    if range_max <= range_min:
        raise ValueError(f"degenerate range [{range_min}, {range_max}]")
    values = grid.values if isinstance(grid, DepthMap) else np.asarray(grid)
    t = (values.astype(np.float64) - range_min) / (range_max - range_min)
    t = np.clip(t, 0.0, 1.0)
    rgb = np.empty(values.shape + (3,), dtype=np.uint8)
    rgb[..., 0] = np.rint(np.interp(t, _RAMP_POSITIONS, _RAMP_RED))
    rgb[..., 1] = np.rint(np.interp(t, _RAMP_POSITIONS, _RAMP_GREEN))
    rgb[..., 2] = np.rint(np.interp(t, _RAMP_POSITIONS, _RAMP_BLUE))
    rgb[values == 0.0] = 0
    _save_png(Image.fromarray(rgb, mode="RGB"), path)


def _save_png(img: Image.Image, path) -> None:
    img.save(Path(path), format="PNG", compress_level=_PNG_COMPRESS_LEVEL)


@dataclass(frozen=True)
class PairListing:
    """Files present in both directories, plus the leftovers on each side."""

    pairs: tuple[tuple[Path, Path], ...]
    unmatched_pred: tuple[str, ...]
    unmatched_gt: tuple[str, ...]


def enumerate_pairs(pred_dir, gt_dir) -> PairListing:
    """Match PNGs between two directories by identical file name."""
    pred_dir = Path(pred_dir)
    gt_dir = Path(gt_dir)
    for d in (pred_dir, gt_dir):
        if not d.is_dir():
            raise NotADirectoryError(f"not a directory: {d}")
    pred_names = {p.name for p in pred_dir.glob("*.png")}
    gt_names = {p.name for p in gt_dir.glob("*.png")}
    common = sorted(pred_names & gt_names)
    if not common:
        raise ValueError(
            f"no files with matching names between {pred_dir} and {gt_dir}"
        )
    pairs = tuple((pred_dir / name, gt_dir / name) for name in common)
    return PairListing(
        pairs=pairs,
        unmatched_pred=tuple(sorted(pred_names - gt_names)),
        unmatched_gt=tuple(sorted(gt_names - pred_names)),
    )
