"""Pure-numpy fallback for the hot filtering kernels.

Same surface as the compiled backend (see _native.py): 2-D C-contiguous
float32 in, fresh float32 out, replicate borders everywhere. Selection ops
(max/min/median) are bit-exact against a brute-force oracle by construction;
Gaussian and bilateral accumulate in float64 before rounding to float32.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

NAME = "python"


def box_max(values: np.ndarray, radius: int) -> np.ndarray:
    """Max filter with a (2r+1) square window, separable into two 1-D passes."""
    k = 2 * radius + 1
    padded = np.pad(values, ((0, 0), (radius, radius)), mode="edge")
    out = sliding_window_view(padded, k, axis=1).max(axis=-1)
    padded = np.pad(out, ((radius, radius), (0, 0)), mode="edge")
    out = sliding_window_view(padded, k, axis=0).max(axis=-1)
    return np.ascontiguousarray(out, dtype=np.float32)


def box_min(values: np.ndarray, radius: int) -> np.ndarray:
    # min(a, b) == -max(-a, -b), exact for floats
    return -box_max(-values, radius)


def offsets_max(values: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Max over an arbitrary offset set (shaped structuring element)."""
    h, w = values.shape
    ry = int(np.abs(offsets[:, 0]).max())
    rx = int(np.abs(offsets[:, 1]).max())
    padded = np.pad(values, ((ry, ry), (rx, rx)), mode="edge")
    out = None
    for dy, dx in offsets:
        window = padded[ry + dy : ry + dy + h, rx + dx : rx + dx + w]
        if out is None:
            out = window.copy()
        else:
            np.maximum(out, window, out=out)
    return out


def offsets_min(values: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    return -offsets_max(-values, offsets)


def median_filter(values: np.ndarray, size: int) -> np.ndarray:
    """Median of the size x size neighborhood (odd size, so no tie rule)."""
    h, w = values.shape
    r = size // 2
    padded = np.pad(values, r, mode="edge")
    windows = sliding_window_view(padded, (size, size)).reshape(h, w, size * size)
    return np.median(windows, axis=-1).astype(np.float32)


def gaussian_separable(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Separable convolution with a normalized 1-D weight vector (float64)."""
    h, w = values.shape
    r = len(weights) // 2
    padded = np.pad(values.astype(np.float64), ((0, 0), (r, r)), mode="edge")
    tmp = np.zeros((h, w), dtype=np.float64)
    for t, wt in enumerate(weights):
        tmp += wt * padded[:, t : t + w]
    padded = np.pad(tmp, ((r, r), (0, 0)), mode="edge")
    out = np.zeros((h, w), dtype=np.float64)
    for t, wt in enumerate(weights):
        out += wt * padded[t : t + h, :]
    return out.astype(np.float32)


def bilateral_filter(
    values: np.ndarray, size: int, sigma_value: float, sigma_space: float
) -> np.ndarray:
    """Edge-preserving blur: weights fall off with both distance and value gap."""
    h, w = values.shape
    r = size // 2
    v64 = values.astype(np.float64)
    padded = np.pad(v64, r, mode="edge")
    inv2_value = -0.5 / (sigma_value * sigma_value)
    inv2_space = -0.5 / (sigma_space * sigma_space)
    num = np.zeros((h, w), dtype=np.float64)
    den = np.zeros((h, w), dtype=np.float64)
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            window = padded[r + dy : r + dy + h, r + dx : r + dx + w]
            diff = window - v64
            wgt = np.exp((dy * dy + dx * dx) * inv2_space + diff * diff * inv2_value)
            num += wgt * window
            den += wgt
    return (num / den).astype(np.float32)
