"""Grayscale morphology and smoothing over depth maps.

All neighborhood operations use replicate borders: out-of-bounds samples take
the nearest in-bounds pixel. Zero padding would inject fake empty values at
the image edges in the inverted encoding, which is exactly what these filters
must not do.

Every operation is pure: the input map is never modified and a fresh map is
returned, carrying the input's encoding tag unchanged. The heavy loops run on
the active kernel backend (compiled extension or numpy fallback).
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .backend import active_backend
from .depth_core import VALIDITY_THRESHOLD, DepthMap
from .kernels import Kernel, kernel_offsets


class BorderPolicy(Enum):
    """Out-of-bounds handling. Only replicate exists; named for extension."""

    REPLICATE = "replicate"


def _check_kernel(kernel: Kernel, depth_map: DepthMap) -> None:
    limit = 2 * min(depth_map.width, depth_map.height) + 1
    if kernel.size > limit:
        raise ValueError(
            f"kernel size {kernel.size} too large for {depth_map.width}x"
            f"{depth_map.height} map (limit {limit})"
        )


def dilate(depth_map: DepthMap, kernel: Kernel) -> DepthMap:
    """Per-pixel max over the kernel footprint.

    In the inverted encoding this grows near surfaces over far ones, and any
    valid neighbor overwrites an empty (0.0) pixel.
    """
    _check_kernel(kernel, depth_map)
    ops = active_backend()
    if kernel.is_full:
        out = ops.box_max(depth_map.values, kernel.size // 2)
    else:
        out = ops.offsets_max(depth_map.values, kernel_offsets(kernel))
    return DepthMap._wrap(out, depth_map.encoding)


def erode(depth_map: DepthMap, kernel: Kernel) -> DepthMap:
    """Per-pixel min over the kernel footprint."""
    _check_kernel(kernel, depth_map)
    ops = active_backend()
    if kernel.is_full:
        out = ops.box_min(depth_map.values, kernel.size // 2)
    else:
        out = ops.offsets_min(depth_map.values, kernel_offsets(kernel))
    return DepthMap._wrap(out, depth_map.encoding)


def close(depth_map: DepthMap, kernel: Kernel) -> DepthMap:
    """Morphological closing (dilate then erode): fills holes smaller than the kernel."""
    return erode(dilate(depth_map, kernel), kernel)


def masked_fill_dilate(depth_map: DepthMap, kernel: Kernel) -> DepthMap:
    """Dilate, but only empty pixels take the result; valid pixels are untouched.

    Empty pixels with no valid pixel inside their footprint stay empty.
    """
    dilated = dilate(depth_map, kernel)
    valid = depth_map.values > VALIDITY_THRESHOLD
    out = np.where(valid, depth_map.values, dilated.values)
    return DepthMap._wrap(out, depth_map.encoding)


def extend_to_top(depth_map: DepthMap) -> DepthMap:
    """Copy each column's topmost valid value into all rows above it.

    Columns with no valid pixel are unchanged; rows at or below the topmost
    valid pixel are never modified.
    """
    values = depth_map.values
    h, w = values.shape
    valid = values > VALIDITY_THRESHOLD
    first_row = valid.argmax(axis=0)
    has_valid = valid.any(axis=0)
    top_values = values[first_row, np.arange(w)]
    rows = np.arange(h)[:, None]
    fill = (rows < first_row[None, :]) & has_valid[None, :]
    out = np.where(fill, top_values[None, :], values)
    return DepthMap._wrap(out, depth_map.encoding)


def median_filter(depth_map: DepthMap, size: int) -> DepthMap:
    """Median of the size x size neighborhood; removes outlier pixels."""
    size = _check_window(size)
    out = active_backend().median_filter(depth_map.values, size)
    return DepthMap._wrap(out, depth_map.encoding)


def gaussian_filter(depth_map: DepthMap, size: int, sigma: float) -> DepthMap:
    """Separable Gaussian blur with the given window size and sigma (pixels)."""
    size = _check_window(size)
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    out = active_backend().gaussian_separable(depth_map.values, gaussian_weights(size, sigma))
    return DepthMap._wrap(out, depth_map.encoding)


def bilateral_filter(
    depth_map: DepthMap, size: int, sigma_value: float, sigma_space: float
) -> DepthMap:
    """Blur that mixes only nearby pixels with similar values (edge preserving)."""
    size = _check_window(size)
    if sigma_value <= 0 or sigma_space <= 0:
        raise ValueError("bilateral sigmas must be positive")
    out = active_backend().bilateral_filter(
        depth_map.values, size, float(sigma_value), float(sigma_space)
    )
    return DepthMap._wrap(out, depth_map.encoding)


def gaussian_weights(size: int, sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian taps: w(i) ~ exp(-i^2 / (2 sigma^2)), sum 1."""
    r = size // 2
    i = np.arange(-r, r + 1, dtype=np.float64)
    w = np.exp(-(i * i) / (2.0 * sigma * sigma))
    return w / w.sum()


def _check_window(size: int) -> int:
    size = int(size)
    if size < 3 or size % 2 == 0:
        raise ValueError(f"window size must be odd and >= 3, got {size}")
    return size
