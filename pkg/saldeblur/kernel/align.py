"""Translation alignment of kernels for comparison."""

import numpy as np

from ..imaging.types import BlurKernel


def centroid(kernel: BlurKernel):
    total = kernel.sum()
    rows, cols = np.indices(kernel.shape)
    return float((rows * kernel).sum() / total), float((cols * kernel).sum() / total)


def align_kernel(kernel: BlurKernel) -> BlurKernel:
    """Circularly shift so the weight centroid lands on the center cell."""
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.sum() <= 0:
        return kernel.copy()
    cy, cx = centroid(kernel)
    center_y, center_x = kernel.shape[0] // 2, kernel.shape[1] // 2
    shift = (center_y - int(np.floor(cy + 0.5)), center_x - int(np.floor(cx + 0.5)))
    return np.roll(kernel, shift, axis=(0, 1))
