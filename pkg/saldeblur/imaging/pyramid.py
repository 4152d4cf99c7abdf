"""Coarse-to-fine scale schedule."""

import logging
import math
from typing import List

import numpy as np

from ..exceptions import ParameterError
from ..models.data import ScaleLevel

logger = logging.getLogger(__name__)


def round_to_odd(value: float) -> int:
    """Nearest odd integer, halves rounded up."""
    return 2 * int(math.floor((value - 1.0) / 2.0 + 0.5)) + 1


def build_pyramid(image, kernel_size: int, min_kernel: int = 3,
                  factor: float = 1.0 / math.sqrt(2.0)) -> List[ScaleLevel]:
    """Scale levels ordered coarse to fine; the finest level is the original size.

    Each coarser level multiplies the kernel size by ``factor`` and rounds to
    the nearest odd size; the schedule stops at the first level whose rounded
    kernel size reaches ``min_kernel``.
    """
    height, width = np.shape(image)[:2]
    if not 0.0 < factor < 1.0:
        raise ParameterError(f"Pyramid factor must lie in (0, 1), got {factor}")

    if kernel_size <= min_kernel:
        return [ScaleLevel(index=0, width=width, height=height, kernel_size=kernel_size, scale=1.0)]

    floor_size = min_kernel if min_kernel % 2 else min_kernel + 1
    levels = [(1.0, kernel_size)]
    n = 1
    while levels[-1][1] > floor_size:
        scale = factor ** n
        ksize = min(max(round_to_odd(kernel_size * scale), floor_size), levels[-1][1])
        levels.append((scale, ksize))
        n += 1

    levels.reverse()
    result = []
    for index, (scale, ksize) in enumerate(levels):
        if index == len(levels) - 1:
            w, h = width, height
        else:
            w = max(int(round(width * scale)), ksize)
            h = max(int(round(height * scale)), ksize)
        result.append(ScaleLevel(index=index, width=w, height=h, kernel_size=ksize, scale=scale))

    logger.debug(f"Pyramid for kernel {kernel_size}: {[lvl.kernel_size for lvl in result]}")
    return result
