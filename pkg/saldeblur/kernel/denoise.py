"""Kernel clean-up: weak-weight suppression and small-component removal."""

import logging

import numpy as np
from scipy import ndimage

from ..exceptions import DegenerateKernelError
from ..imaging.types import BlurKernel, normalize_kernel

logger = logging.getLogger(__name__)

WEAK_FRACTION = 1.0 / 20.0
EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


def denoise_kernel(kernel: BlurKernel, divisor: int = 160) -> BlurKernel:
    """Zero weights below max/20, drop 8-connected islands smaller than area/divisor, renormalize.

    When every island is below the area limit the largest one is kept.
    """
    k = np.clip(np.asarray(kernel, dtype=np.float64), 0.0, None)
    peak = k.max() if k.size else 0.0
    if not peak > 0:
        raise DegenerateKernelError("Cannot denoise a kernel without positive weight")

    k = np.where(k < peak * WEAK_FRACTION, 0.0, k)

    labels, count = ndimage.label(k > 0, structure=EIGHT_CONNECTED)
    areas = np.bincount(labels.ravel(), minlength=count + 1)[1:]
    min_area = k.size / float(divisor)
    survivors = np.flatnonzero(areas >= min_area) + 1
    if survivors.size == 0:
        survivors = np.array([int(np.argmax(areas)) + 1])
        logger.debug(f"All {count} kernel components below {min_area:.2f} px; keeping the largest")

    k = np.where(np.isin(labels, survivors), k, 0.0)
    return normalize_kernel(k)
