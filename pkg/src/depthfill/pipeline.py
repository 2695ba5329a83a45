"""The depth-completion pipeline: eight stages from sparse input to dense output.

Stage order: invert, shaped dilation, closing, small masked fill, extension to
the top of frame, iterated large masked fill, blur, invert back. The partial
fill mode skips the extension and large-fill stages and re-imposes the
validity mask after each blur, producing a denser-but-not-full map for
point-cloud use.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import morphology
from .depth_core import (
    VALIDITY_THRESHOLD,
    DepthEncoding,
    DepthMap,
    EncodingError,
    invert,
    invert_back,
)
from .kernels import KernelShape, make_kernel


class BlurMode(Enum):
    NONE = "none"
    BILATERAL = "bilateral"
    MEDIAN = "median"
    MEDIAN_BILATERAL = "median_bilateral"
    GAUSSIAN = "gaussian"
    MEDIAN_GAUSSIAN = "median_gaussian"


class FillMode(Enum):
    FULL = "full"
    PARTIAL = "partial"


class DegenerateInputError(ValueError):
    """Input with no valid pixels: there is nothing to extrapolate from."""


# Defaults reproduce the best-performing configuration: 5x5 diamond dilation
# followed by a median+Gaussian blur.
@dataclass(frozen=True)
class PipelineConfig:
    dilation_shape: KernelShape = KernelShape.DIAMOND
    dilation_size: int = 5
    closure_size: int = 5
    small_fill_size: int = 7
    large_fill_size: int = 31
    # 100 iterations of a 31x31 fill reach ~1500 px, enough to densify a
    # KITTI-sized frame from a single valid pixel in any corner. On real
    # LIDAR frames one iteration suffices; the loop stops as soon as the
    # map is dense.
    large_fill_max_iters: int = 100
    blur_mode: BlurMode = BlurMode.MEDIAN_GAUSSIAN
    median_size: int = 5
    gaussian_size: int = 5
    gaussian_sigma: float = 1.1
    bilateral_size: int = 5
    bilateral_sigma_value: float = 1.5
    bilateral_sigma_space: float = 2.0
    fill_mode: FillMode = FillMode.FULL

    def __post_init__(self):
        for name in (
            "dilation_size",
            "closure_size",
            "small_fill_size",
            "large_fill_size",
            "median_size",
            "gaussian_size",
            "bilateral_size",
        ):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 3 or value % 2 == 0:
                raise ValueError(f"{name} must be an odd integer >= 3, got {value!r}")
        if self.large_fill_max_iters < 1:
            raise ValueError("large_fill_max_iters must be >= 1")
        if self.gaussian_sigma <= 0:
            raise ValueError("gaussian_sigma must be positive")
        if self.bilateral_sigma_value <= 0 or self.bilateral_sigma_space <= 0:
            raise ValueError("bilateral sigmas must be positive")


STAGE_NAMES = (
    "invert",
    "dilate",
    "close",
    "small_fill",
    "extend_top",
    "large_fill",
    "blur",
    "invert_back",
)


@dataclass(frozen=True)
class RunStats:
    """Wall-clock timing per pipeline stage plus input/output densities."""

    stage_ms: tuple[tuple[str, float], ...]
    total_ms: float
    input_density: float
    output_density: float
    large_fill_iterations: int = 0

    def stage(self, name: str) -> float:
        return dict(self.stage_ms)[name]


def complete(sparse: DepthMap, config: PipelineConfig | None = None) -> DepthMap:
    """Densify a sparse direct-encoded depth map. See :func:`complete_with_stats`."""
    dense, _ = complete_with_stats(sparse, config)
    return dense


def complete_with_stats(
    sparse: DepthMap, config: PipelineConfig | None = None
) -> tuple[DepthMap, RunStats]:
    """Run the eight-stage pipeline and time each stage.

    Requires a direct-encoded input with at least one valid pixel and all
    values below 100 m. In full fill mode the output is fully dense (within
    the configured large-fill iteration budget) and every output value lies
    inside the range of the valid input depths.
    """
    if config is None:
        config = PipelineConfig()
    if sparse.encoding is not DepthEncoding.DIRECT:
        raise EncodingError("pipeline input must be direct-encoded")
    n_valid = int(np.count_nonzero(sparse.values > VALIDITY_THRESHOLD))
    if n_valid == 0:
        raise DegenerateInputError("input depth map has no valid pixels")
    input_density = n_valid / sparse.values.size
    config = _fit_to_frame(config, sparse)
    full = config.fill_mode is FillMode.FULL

    timings: list[tuple[str, float]] = []
    t_start = time.perf_counter()

    def timed(name, fn, *args):
        t0 = time.perf_counter()
        result = fn(*args)
        timings.append((name, (time.perf_counter() - t0) * 1000.0))
        return result

    current = timed("invert", invert, sparse)
    current = timed(
        "dilate",
        morphology.dilate,
        current,
        make_kernel(config.dilation_shape, config.dilation_size),
    )
    current = timed(
        "close", morphology.close, current, make_kernel(KernelShape.FULL, config.closure_size)
    )
    current = timed(
        "small_fill",
        morphology.masked_fill_dilate,
        current,
        make_kernel(KernelShape.FULL, config.small_fill_size),
    )

    if full:
        current = timed("extend_top", morphology.extend_to_top, current)
    else:
        timings.append(("extend_top", 0.0))

    fill_iterations = 0
    if full:
        t0 = time.perf_counter()
        large_kernel = make_kernel(KernelShape.FULL, config.large_fill_size)
        while fill_iterations < config.large_fill_max_iters:
            if not (current.values <= VALIDITY_THRESHOLD).any():
                break
            current = morphology.masked_fill_dilate(current, large_kernel)
            fill_iterations += 1
        timings.append(("large_fill", (time.perf_counter() - t0) * 1000.0))
    else:
        timings.append(("large_fill", 0.0))

    current = timed("blur", _blur_stage, current, config)
    dense = timed("invert_back", invert_back, current)

    total_ms = (time.perf_counter() - t_start) * 1000.0
    output_density = (
        float(np.count_nonzero(dense.values > VALIDITY_THRESHOLD)) / dense.values.size
    )
    stats = RunStats(
        stage_ms=tuple(timings),
        total_ms=total_ms,
        input_density=input_density,
        output_density=output_density,
        large_fill_iterations=fill_iterations,
    )
    return dense, stats


def _blur_stage(current: DepthMap, config: PipelineConfig) -> DepthMap:
    """Apply the configured blurs; in partial mode re-impose the validity mask
    after each one so empty pixels are not contaminated."""
    partial = config.fill_mode is FillMode.PARTIAL
    mode = config.blur_mode

    def reimpose(blurred: DepthMap, mask: np.ndarray) -> DepthMap:
        out = np.where(mask, blurred.values, np.float32(0.0))
        return DepthMap._wrap(out, blurred.encoding)

    if mode in (BlurMode.MEDIAN, BlurMode.MEDIAN_BILATERAL, BlurMode.MEDIAN_GAUSSIAN):
        mask = current.values > VALIDITY_THRESHOLD if partial else None
        current = morphology.median_filter(current, config.median_size)
        if partial:
            current = reimpose(current, mask)
    if mode in (BlurMode.GAUSSIAN, BlurMode.MEDIAN_GAUSSIAN):
        mask = current.values > VALIDITY_THRESHOLD if partial else None
        current = morphology.gaussian_filter(
            current, config.gaussian_size, config.gaussian_sigma
        )
        if partial:
            current = reimpose(current, mask)
    if mode in (BlurMode.BILATERAL, BlurMode.MEDIAN_BILATERAL):
        mask = current.values > VALIDITY_THRESHOLD if partial else None
        current = morphology.bilateral_filter(
            current,
            config.bilateral_size,
            config.bilateral_sigma_value,
            config.bilateral_sigma_space,
        )
        if partial:
            current = reimpose(current, mask)
    return current


def _fit_to_frame(config: PipelineConfig, sparse: DepthMap) -> PipelineConfig:
    """Clamp kernel sizes to the largest legal size for this frame.

    Neighborhood ops reject kernels wider than 2*min(w,h)+1; on tiny frames
    the configured sizes are shrunk (keeping them odd and >= 3) so the
    pipeline remains well-defined for any input dimensions.
    """
    limit = 2 * min(sparse.width, sparse.height) + 1
    changes = {}
    for name in ("dilation_size", "closure_size", "small_fill_size", "large_fill_size"):
        value = getattr(config, name)
        if value > limit:
            changes[name] = max(limit, 3)
    return replace(config, **changes) if changes else config
