"""Image and kernel similarity metrics."""

import math
from typing import Optional

import numpy as np

from ..exceptions import DimensionError, ParameterError
from ..imaging.types import BinaryMask, BlurKernel, as_image, broadcast_mask
from ..kernel.align import align_kernel


def rmse(a, b, mask: Optional[BinaryMask] = None) -> float:
    """Root mean squared error over all channels, optionally restricted to ``mask``."""
    a = as_image(a)
    b = as_image(b)
    if a.shape != b.shape:
        raise DimensionError(f"rmse: shapes {a.shape} and {b.shape} differ")
    diff = (a - b) ** 2
    if mask is None:
        return float(np.sqrt(diff.mean()))
    selected = np.broadcast_to(broadcast_mask(mask, a), a.shape)
    if not selected.any():
        raise ParameterError("rmse: mask selects no pixels")
    return float(np.sqrt(diff[selected].mean()))


def psnr(a, b, peak: float = 1.0) -> float:
    """Peak signal-to-noise ratio in dB; identical images give infinity."""
    error = rmse(a, b)
    if error == 0.0:
        return math.inf
    return 20.0 * math.log10(peak / error)


def _pad_to(kernel: BlurKernel, size: int) -> BlurKernel:
    pad = (size - kernel.shape[0]) // 2
    return np.pad(kernel, pad)


def kernel_ncc(estimated: BlurKernel, reference: BlurKernel) -> float:
    """Normalized cross-correlation of two kernels after centroid alignment.

    The smaller kernel is zero-padded around its center to the larger size.
    """
    estimated = np.asarray(estimated, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    size = max(estimated.shape[0], reference.shape[0])
    a = _pad_to(align_kernel(estimated), size).ravel()
    b = _pad_to(align_kernel(reference), size).ravel()
    a = a - a.mean()
    b = b - b.mean()
    denominator = np.sqrt(np.sum(a * a) * np.sum(b * b))
    if denominator == 0:
        return 0.0
    return float(np.sum(a * b) / denominator)
