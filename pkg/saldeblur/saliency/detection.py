"""Frequency-tuned saliency and saliency-mask construction."""

import logging

import numpy as np
from scipy import ndimage
from skimage.morphology import disk

from ..exceptions import ParameterError
from ..imaging.color import rgb_to_lab
from ..imaging.types import BinaryMask, PlanarImage, require_color

logger = logging.getLogger(__name__)

BINOMIAL_5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0
FLAT_SALIENCY = 1e-9


def binomial_blur(image: PlanarImage) -> PlanarImage:
    """Separable 5x5 binomial low-pass with replicated borders, per channel."""
    out = ndimage.convolve1d(image, BINOMIAL_5, axis=0, mode="nearest")
    return ndimage.convolve1d(out, BINOMIAL_5, axis=1, mode="nearest")


def saliency_from_lab(lab: PlanarImage) -> PlanarImage:
    """Distance between the mean Lab color and the low-passed Lab image, scaled to [0, 1]."""
    mean = lab.reshape(-1, 3).mean(axis=0)
    blurred = binomial_blur(lab)
    saliency = np.sqrt(np.sum((blurred - mean) ** 2, axis=2))
    peak = saliency.max()
    if peak <= FLAT_SALIENCY:
        return np.zeros_like(saliency)
    return saliency / peak


def saliency_map(image) -> PlanarImage:
    image = require_color(image, "saliency_map")
    return saliency_from_lab(rgb_to_lab(image))


def binarize_and_dilate(saliency: PlanarImage, threshold_scale: float = 2.0, dilate_radius: int = 1) -> BinaryMask:
    """Threshold at ``threshold_scale`` times the mean saliency, then dilate with a disk.

    An all-zero map yields an all-zero mask rather than firing everywhere on
    the zero threshold.
    """
    if threshold_scale <= 0:
        raise ParameterError(f"threshold_scale must be positive, got {threshold_scale}")
    saliency = np.asarray(saliency, dtype=np.float64)
    if not np.any(saliency > 0):
        return np.zeros(saliency.shape, dtype=bool)

    threshold = threshold_scale * saliency.mean()
    mask = saliency >= threshold
    if dilate_radius > 0:
        footprint = disk(dilate_radius, strict_radius=False).astype(bool)
        mask = ndimage.binary_dilation(mask, structure=footprint)
    logger.debug(f"Saliency threshold {threshold:.4f}, foreground fraction {mask.mean():.3f}")
    return mask
