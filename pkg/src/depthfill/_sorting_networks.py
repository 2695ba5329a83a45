"""Comparator networks used by the compiled median filter.

The networks are generated, not hand-copied: Batcher's odd-even mergesort for
the next power of two, pruned to the real input count (comparators touching a
virtual +inf wire are no-ops and can be dropped), then pruned again to the
backward dependency cone of the median output wire. Correctness is covered by
an exhaustive 0-1-principle test in the test suite.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def batcher_sort_pairs(n_pow2: int) -> list[tuple[int, int]]:
    """Comparator (lo, hi) pairs of odd-even mergesort for a power-of-two size."""
    pairs = []
    p = 1
    while p < n_pow2:
        k = p
        while k >= 1:
            for j in range(k % p, n_pow2 - k, 2 * k):
                for i in range(min(k, n_pow2 - j - k)):
                    if (i + j) // (p * 2) == (i + j + k) // (p * 2):
                        pairs.append((i + j, i + j + k))
            k //= 2
        p *= 2
    return pairs


def sort_pairs(n: int) -> list[tuple[int, int]]:
    """A valid sorting network for n inputs (pruned power-of-two Batcher)."""
    n_pow2 = 1 << (n - 1).bit_length()
    return [(a, b) for (a, b) in batcher_sort_pairs(n_pow2) if b < n]


@lru_cache(maxsize=None)
def median_pairs(n: int) -> np.ndarray:
    """Comparators that place the median of n inputs on wire n // 2.

    Returned as an (m, 2) int32 array. Comparators outside the backward
    dependency cone of the median wire cannot affect it and are dropped.
    """
    pairs = sort_pairs(n)
    needed = {n // 2}
    keep = []
    for a, b in reversed(pairs):
        if a in needed or b in needed:
            keep.append((a, b))
            needed.add(a)
            needed.add(b)
    keep.reverse()
    out = np.array(keep, dtype=np.int32)
    out.setflags(write=False)
    return out
