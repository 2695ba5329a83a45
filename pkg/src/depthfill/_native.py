"""Adapter exposing the compiled extension under the common backend surface.

Importing this module raises ImportError when the extension was not built;
backend selection falls back to _numpy_ops in that case.
"""

from __future__ import annotations

import numpy as np

from . import _native_ops
from ._sorting_networks import median_pairs

NAME = "native"

box_max = _native_ops.box_max
box_min = _native_ops.box_min
offsets_max = _native_ops.offsets_max
offsets_min = _native_ops.offsets_min
bilateral_filter = _native_ops.bilateral_filter


def median_filter(values: np.ndarray, size: int) -> np.ndarray:
    if size in (3, 5):
        return _native_ops.median_network(values, size, median_pairs(size * size))
    return _native_ops.median_generic(values, size)


def gaussian_separable(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return _native_ops.gaussian_separable(values, np.ascontiguousarray(weights, dtype=np.float64))
