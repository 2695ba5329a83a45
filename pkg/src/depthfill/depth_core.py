"""Depth map value type, validity semantics, and the depth inversion transform.

Depth maps are dense 2-D float32 grids in meters. A pixel with no measurement
carries the sentinel 0.0; anything at or below ``VALIDITY_THRESHOLD`` counts as
empty. Valid depths are inverted (``100 - d``) before the morphological stages
so that max-based filtering prefers *nearer* surfaces and empty pixels always
lose, then inverted back at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

# A pixel is a real measurement iff its value exceeds this (meters). The file
# format quantizes to 1/256 m and no LIDAR return is closer than 10 cm, so a
# 0.1 m cut is robust against float round-trips, unlike a strict > 0 test.
VALIDITY_THRESHOLD = 0.1

# Fixed inversion offset. Valid inputs must be < 100 m; LIDAR returns top out
# near 80 m, which leaves a 20 m gap between inverted valid values and the
# empty sentinel 0.0 so dilation never confuses the two.
INVERSION_OFFSET = 100.0

# Guard against absurd allocation requests (width * height).
_MAX_PIXELS = 2**31


class DepthEncoding(Enum):
    """Which encoding the stored values are in."""

    DIRECT = "direct"
    INVERTED = "inverted"


class EncodingError(ValueError):
    """Operation applied to a map in the wrong encoding."""


class DepthRangeError(ValueError):
    """Depth values outside the invertible range."""


@dataclass(frozen=True, eq=False)
class DepthMap:
    """An immutable 2-D grid of depth values (meters, float32).

    Values are row-major, shape (height, width). The encoding tag travels with
    the data so that mis-ordered pipeline stages fail loudly instead of
    producing plausible garbage.
    """

    values: np.ndarray = field(repr=False)
    encoding: DepthEncoding = DepthEncoding.DIRECT

    def __post_init__(self):
        arr = np.asarray(self.values)
        if arr.ndim != 2:
            raise ValueError(f"depth map must be 2-D, got shape {arr.shape}")
        h, w = arr.shape
        if h < 1 or w < 1:
            raise ValueError(f"depth map dimensions must be >= 1, got {w}x{h}")
        if h * w > _MAX_PIXELS:
            raise ValueError(f"depth map dimensions {w}x{h} exceed supported size")
        arr = np.ascontiguousarray(arr, dtype=np.float32)
        if not np.isfinite(arr).all():
            raise ValueError("depth values must be finite")
        if (arr < 0).any():
            raise ValueError("depth values must be non-negative")
        if arr is self.values:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def _wrap(cls, values: np.ndarray, encoding: DepthEncoding) -> "DepthMap":
        """Wrap an operation result without re-validating (trusted callers only)."""
        obj = object.__new__(cls)
        values.setflags(write=False)
        object.__setattr__(obj, "values", values)
        object.__setattr__(obj, "encoding", encoding)
        return obj

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    def __repr__(self):
        return f"DepthMap({self.width}x{self.height}, {self.encoding.value})"


@dataclass(frozen=True, eq=False)
class ValidityMask:
    """Per-pixel booleans: True where the map holds a real measurement."""

    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=bool)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def __repr__(self):
        return f"ValidityMask({self.width}x{self.height})"


def new_depth_map(width: int, height: int) -> DepthMap:
    """Create an all-empty direct-encoded map of the given size."""
    width = int(width)
    height = int(height)
    if width < 1 or height < 1:
        raise ValueError(f"dimensions must be >= 1, got {width}x{height}")
    if width * height > _MAX_PIXELS:
        raise ValueError(f"dimensions {width}x{height} exceed supported size")
    return DepthMap(np.zeros((height, width), dtype=np.float32))


def invert(depth_map: DepthMap) -> DepthMap:
    """Map every valid pixel d to 100 - d; empty pixels become exactly 0.0.

    Near depths become large values, so max-based dilation lets close surfaces
    overwrite far ones, and empty pixels (0.0) are overwritten by anything.
    """
    if depth_map.encoding is not DepthEncoding.DIRECT:
        raise EncodingError("invert expects a direct-encoded map")
    return DepthMap._wrap(_flip(depth_map.values), DepthEncoding.INVERTED)


def invert_back(depth_map: DepthMap) -> DepthMap:
    """Undo :func:`invert`: valid pixels become 100 - v, empties stay 0.0."""
    if depth_map.encoding is not DepthEncoding.INVERTED:
        raise EncodingError("invert_back expects an inverted-encoded map")
    return DepthMap._wrap(_flip(depth_map.values), DepthEncoding.DIRECT)


def _flip(values: np.ndarray) -> np.ndarray:
    valid = values > VALIDITY_THRESHOLD
    if (values >= INVERSION_OFFSET).any():
        raise DepthRangeError(
            f"values must be < {INVERSION_OFFSET} to be invertible"
        )
    return np.where(valid, np.float32(INVERSION_OFFSET) - values, np.float32(0.0))


def validity_mask(depth_map: DepthMap) -> ValidityMask:
    """Boolean mask of pixels holding a real measurement."""
    return ValidityMask(depth_map.values > VALIDITY_THRESHOLD)


def density(depth_map: DepthMap) -> float:
    """Fraction of pixels that are valid, in [0, 1]."""
    bits = depth_map.values > VALIDITY_THRESHOLD
    return float(np.count_nonzero(bits)) / bits.size
