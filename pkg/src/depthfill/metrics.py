"""Depth-completion error metrics: RMSE / MAE (mm) and iRMSE / iMAE (1/km).

Metrics are computed over pixels where both the ground truth and the
prediction are valid. Ground-truth-valid pixels that the prediction leaves
empty are counted separately (relevant for partial-fill outputs) rather than
failing the evaluation.

Dataset-level numbers aggregate per *pixel* across all frames (sums of
squared/absolute errors and counts are accumulated, then finalized), not by
averaging per-frame metrics. Per-frame averaging is available in the CLI
behind a flag for sensitivity checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .depth_core import VALIDITY_THRESHOLD, DepthEncoding, DepthMap, EncodingError

_M_TO_MM = 1000.0
_INV_M_TO_INV_KM = 1000.0


@dataclass(frozen=True)
class MetricsReport:
    rmse_mm: float
    mae_mm: float
    irmse_invkm: float
    imae_invkm: float
    evaluated_pixels: int
    skipped_pixels: int

    CSV_HEADER = "rmse_mm,mae_mm,irmse_invkm,imae_invkm,evaluated_pixels,skipped_pixels"

    def to_text(self) -> str:
        """Flat key=value document, one metric per line."""
        return (
            f"rmse_mm={self.rmse_mm:.6f}\n"
            f"mae_mm={self.mae_mm:.6f}\n"
            f"irmse_invkm={self.irmse_invkm:.6f}\n"
            f"imae_invkm={self.imae_invkm:.6f}\n"
            f"evaluated_pixels={self.evaluated_pixels}\n"
            f"skipped_pixels={self.skipped_pixels}\n"
        )

    def to_csv_row(self) -> str:
        return (
            f"{self.rmse_mm:.6f},{self.mae_mm:.6f},"
            f"{self.irmse_invkm:.6f},{self.imae_invkm:.6f},"
            f"{self.evaluated_pixels},{self.skipped_pixels}"
        )


class MetricsAccumulator:
    """Accumulates per-pixel error sums across frames, then finalizes.

    This is the dataset-aggregation path: identical to evaluating one giant
    concatenated frame.
    """

    def __init__(self):
        self.sum_sq = 0.0
        self.sum_abs = 0.0
        self.sum_inv_sq = 0.0
        self.sum_inv_abs = 0.0
        self.evaluated = 0
        self.skipped = 0

    def add(self, pred: DepthMap, gt: DepthMap) -> None:
        sq, ab, inv_sq, inv_ab, n, skipped = _error_sums(pred, gt)
        self.sum_sq += sq
        self.sum_abs += ab
        self.sum_inv_sq += inv_sq
        self.sum_inv_abs += inv_ab
        self.evaluated += n
        self.skipped += skipped

    def finalize(self) -> MetricsReport:
        if self.evaluated == 0:
            raise ValueError("no overlapping valid pixels were accumulated")
        return _finalize(
            self.sum_sq,
            self.sum_abs,
            self.sum_inv_sq,
            self.sum_inv_abs,
            self.evaluated,
            self.skipped,
        )


def evaluate(pred: DepthMap, gt: DepthMap) -> MetricsReport:
    """All four metrics for one prediction / ground-truth pair."""
    sq, ab, inv_sq, inv_ab, n, skipped = _error_sums(pred, gt)
    if n == 0:
        raise ValueError("prediction and ground truth share no valid pixels")
    return _finalize(sq, ab, inv_sq, inv_ab, n, skipped)


def error_map(pred: DepthMap, gt: DepthMap) -> np.ndarray:
    """|pred - gt| in meters where both are valid, 0 elsewhere."""
    _check_pair(pred, gt)
    both = (pred.values > VALIDITY_THRESHOLD) & (gt.values > VALIDITY_THRESHOLD)
    diff = np.abs(
        pred.values.astype(np.float64) - gt.values.astype(np.float64)
    ).astype(np.float32)
    return np.where(both, diff, np.float32(0.0))


def _check_pair(pred: DepthMap, gt: DepthMap) -> None:
    if pred.values.shape != gt.values.shape:
        raise ValueError(
            f"dimension mismatch: prediction {pred.width}x{pred.height} vs "
            f"ground truth {gt.width}x{gt.height}"
        )
    if pred.encoding is not DepthEncoding.DIRECT or gt.encoding is not DepthEncoding.DIRECT:
        raise EncodingError("metrics expect direct-encoded maps")


def _error_sums(pred: DepthMap, gt: DepthMap):
    _check_pair(pred, gt)
    gt_valid = gt.values > VALIDITY_THRESHOLD
    pred_valid = pred.values > VALIDITY_THRESHOLD
    both = gt_valid & pred_valid
    skipped = int(np.count_nonzero(gt_valid & ~pred_valid))
    d = pred.values[both].astype(np.float64)
    g = gt.values[both].astype(np.float64)
    err = d - g
    inv_err = 1.0 / d - 1.0 / g
    return (
        float(np.dot(err, err)),
        float(np.abs(err).sum()),
        float(np.dot(inv_err, inv_err)),
        float(np.abs(inv_err).sum()),
        int(both.sum()),
        skipped,
    )


def _finalize(sum_sq, sum_abs, sum_inv_sq, sum_inv_abs, n, skipped) -> MetricsReport:
    return MetricsReport(
        rmse_mm=float(np.sqrt(sum_sq / n) * _M_TO_MM),
        mae_mm=float(sum_abs / n * _M_TO_MM),
        irmse_invkm=float(np.sqrt(sum_inv_sq / n) * _INV_M_TO_INV_KM),
        imae_invkm=float(sum_inv_abs / n * _INV_M_TO_INV_KM),
        evaluated_pixels=n,
        skipped_pixels=skipped,
    )
