"""Thresholded gradient maps and the derivative pairs that drive kernel estimation."""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import DimensionError
from ..imaging.derivatives import derivative, gradient
from ..imaging.types import GradientField, PlanarImage, require_gray, require_same_shape

logger = logging.getLogger(__name__)

DIRECTION_BINS = 4
PAIR_NAMES = ("x", "y", "xx", "yy", "xy")


def direction_bins(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Quantize gradient orientation (mod pi) to 0, 45, 90 and 135 degrees."""
    angle = np.mod(np.arctan2(gy, gx), np.pi)
    step = np.pi / DIRECTION_BINS
    return np.floor(angle / step + 0.5).astype(int) % DIRECTION_BINS


def select_by_direction(gx: np.ndarray, gy: np.ndarray, target: int) -> np.ndarray:
    """Boolean map of the pixels kept by the direction-binned magnitude threshold.

    Inside each orientation bin the threshold is the ``target``-th largest
    magnitude, so at least ``target`` pixels of every populated bin survive
    (all of them when the bin holds fewer).
    """
    magnitude = np.hypot(gx, gy)
    bins = direction_bins(gx, gy)
    keep = np.zeros(magnitude.shape, dtype=bool)
    target = max(int(target), 1)

    for b in range(DIRECTION_BINS):
        members = (bins == b) & (magnitude > 0)
        count = int(members.sum())
        if count == 0:
            continue
        if count <= target:
            keep |= members
            continue
        values = np.sort(magnitude[members])[::-1]
        threshold = values[target - 1]
        keep |= members & (magnitude >= threshold)
    return keep


def target_count(shape: Tuple[int, int], kernel_size: int, ratio: float) -> int:
    h, w = shape
    return max(int(round(ratio * kernel_size * math.sqrt(w * h))), 1)


def threshold_gradients(predicted, kernel_size: int, ratio: float = 2.0) -> GradientField:
    """Gradient map of the prediction with weak gradients zeroed, per orientation bin."""
    predicted = require_gray(predicted, "threshold_gradients")
    gx, gy = gradient(predicted)
    target = target_count(predicted.shape, kernel_size, ratio)
    keep = select_by_direction(gx, gy, target)
    logger.debug(f"Gradient threshold kept {int(keep.sum())} pixels (target {target} per bin)")
    return GradientField(np.where(keep, gx, 0.0), np.where(keep, gy, 0.0))


@dataclass
class GradientPairs:
    """Matched (latent derivative, blurry derivative) grids with their weights."""
    latent: List[np.ndarray]
    blurry: List[np.ndarray]
    weights: Tuple[float, ...]

    def __post_init__(self):
        if not len(self.latent) == len(self.blurry) == len(self.weights):
            raise DimensionError("latent, blurry and weights must have the same length")
        require_same_shape(*self.latent, *self.blurry, operation="GradientPairs")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.latent[0].shape

    def __iter__(self):
        return iter(zip(self.weights, self.latent, self.blurry))

    def is_empty(self) -> bool:
        return not any(np.any(p != 0) for p in self.latent)


def gradient_pairs(field: GradientField, blurry: PlanarImage,
                   weights: Sequence[float] = (25.0, 25.0, 12.5, 12.5, 12.5)) -> GradientPairs:
    blurry = require_gray(blurry, "gradient_pairs")
    px, py = field
    latent = [
        px,
        py,
        derivative(px, 'dx'),
        derivative(py, 'dy'),
        (derivative(py, 'dx') + derivative(px, 'dy')) / 2.0,
    ]
    observed = [derivative(blurry, which) for which in ('dx', 'dy', 'dxx', 'dyy', 'dxy')]
    return GradientPairs(latent=latent, blurry=observed, weights=tuple(weights))
