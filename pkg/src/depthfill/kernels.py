"""Binary structuring elements for the morphological stages.

Four shapes are supported: full (solid square), circle, cross, and diamond.
All are centered, odd-sized, and symmetric under reflection across both axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class KernelShape(Enum):
    FULL = "full"
    CIRCLE = "circle"
    CROSS = "cross"
    DIAMOND = "diamond"


@dataclass(frozen=True, eq=False)
class Kernel:
    """A k x k boolean footprint anchored at its center pixel."""

    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=bool)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def size(self) -> int:
        return self.bits.shape[0]

    @property
    def is_full(self) -> bool:
        return bool(self.bits.all())

    def __repr__(self):
        return f"Kernel({self.size}x{self.size}, popcount={int(self.bits.sum())})"


def make_kernel(shape: KernelShape, size: int) -> Kernel:
    """Build the named structuring element at an odd size >= 3.

    full:    every bit set.
    diamond: |dx| + |dy| <= size//2 (the L1 ball).
    cross:   dx == 0 or dy == 0 (center row and column).
    circle:  dx^2 + dy^2 <= (size/2)^2 with the half-width taken exactly
             (compared as 4*(dx^2+dy^2) <= size^2, so ties are included);
             at size 5 this is the full square minus its four corners.
    """
    size = int(size)
    if size < 3 or size % 2 == 0:
        raise ValueError(f"kernel size must be odd and >= 3, got {size}")
    r = size // 2
    d = np.arange(-r, r + 1)
    dx, dy = np.meshgrid(d, d)
    if shape is KernelShape.FULL:
        bits = np.ones((size, size), dtype=bool)
    elif shape is KernelShape.DIAMOND:
        bits = np.abs(dx) + np.abs(dy) <= r
    elif shape is KernelShape.CROSS:
        bits = (dx == 0) | (dy == 0)
    elif shape is KernelShape.CIRCLE:
        bits = 4 * (dx * dx + dy * dy) <= size * size
    else:
        raise ValueError(f"unknown kernel shape: {shape!r}")
    return Kernel(bits)


def kernel_offsets(kernel: Kernel) -> np.ndarray:
    """Set bits as an (n, 2) int32 array of (dy, dx) offsets from the center."""
    r = kernel.size // 2
    offs = np.argwhere(kernel.bits).astype(np.int32) - r
    return np.ascontiguousarray(offs)
